//! Rotated surface code on a `distance × distance` grid of qubits, indexed
//! row-major. Face `(i, j)` for `i, j ∈ -1..distance` covers the qubits at
//! rows `i, i+1` and columns `j, j+1` that lie inside the grid; it is
//! X-type when `i + j` is even. All interior faces are kept, the top and
//! bottom boundary keep their X-type half-faces and the left and right
//! boundary keep their Z-type ones, giving `distance² - 1` checks.

use super::{StabilizerGroup, SymplecticPauli};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Logical {
    Zero,
    One,
    Plus,
    Minus,
}

impl std::str::FromStr for Logical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Logical::Zero),
            "one" | "1" => Ok(Logical::One),
            "plus" | "+" => Ok(Logical::Plus),
            "minus" | "-" => Ok(Logical::Minus),
            other => Err(Error::invalid(format!("unknown logical state {other:?}"))),
        }
    }
}

/// The checks plus a transversal logical `Z` (for `Zero`/`One`) or `X`
/// (for `Plus`/`Minus`) string. Signs are not tracked, so `Zero` and `One`
/// (likewise `Plus` and `Minus`) produce the same generators.
pub fn rotated_surface_code_logical_generators(
    distance: usize,
    logical: Logical,
) -> Result<StabilizerGroup> {
    if distance < 3 || distance.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "surface code distance must be odd and at least 3, got {distance}"
        )));
    }
    let dist = distance as isize;
    let n = distance * distance;
    let mut checks = Vec::with_capacity(n);
    for i in -1..dist {
        for j in -1..dist {
            let x_type = (i + j).rem_euclid(2) == 0;
            let vertical_edge = i == -1 || i == dist - 1;
            let horizontal_edge = j == -1 || j == dist - 1;
            let keep = match (vertical_edge, horizontal_edge) {
                (false, false) => true,
                (true, false) => x_type,
                (false, true) => !x_type,
                (true, true) => false,
            };
            if !keep {
                continue;
            }
            let mut support = vec![0u8; n];
            for a in [i, i + 1] {
                for b in [j, j + 1] {
                    if (0..dist).contains(&a) && (0..dist).contains(&b) {
                        support[(a * dist + b) as usize] = 1;
                    }
                }
            }
            let zeros = vec![0u8; n];
            checks.push(if x_type {
                SymplecticPauli::new(2, support, zeros)?
            } else {
                SymplecticPauli::new(2, zeros, support)?
            });
        }
    }

    let want_z = matches!(logical, Logical::Zero | Logical::One);
    let lines = (0..distance).flat_map(|k| {
        let row: Vec<usize> = (0..distance).map(|c| k * distance + c).collect();
        let col: Vec<usize> = (0..distance).map(|c| c * distance + k).collect();
        [row, col]
    });
    let logical_op = lines
        .map(|sites| {
            let mut support = vec![0u8; n];
            for s in sites {
                support[s] = 1;
            }
            let zeros = vec![0u8; n];
            if want_z {
                SymplecticPauli::new(2, zeros, support)
            } else {
                SymplecticPauli::new(2, support, zeros)
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|op| checks.iter().all(|c| c.symplectic_form(op) == 0))
        .ok_or_else(|| Error::invalid("no transversal logical operator commutes with the checks"))?;
    checks.push(logical_op);
    StabilizerGroup::new(n, 2, checks)
}
