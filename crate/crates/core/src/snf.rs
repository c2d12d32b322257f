//! Smith normal form over the integers with arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Invariant factors of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<String>,
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form (nonzero entries only).
pub fn smith_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
    let nr = m.len();
    let mut diag = Vec::new();
    let mut top = 0;
    while top < nr.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(top) {
            for (j, x) in row.iter().enumerate().skip(top) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let mut dirty = false;
            for i in top + 1..nr {
                if !m[i][top].is_zero() {
                    let q = &m[i][top] / &m[top][top];
                    for j in top..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                    if !m[i][top].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in top + 1..cols {
                if !m[top][j].is_zero() {
                    let q = &m[top][j] / &m[top][top];
                    for row in m.iter_mut().skip(top) {
                        let sub = &q * &row[top];
                        row[j] -= sub;
                    }
                    if !m[top][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // Divisibility: fold any entry not divisible by the pivot into the pivot row.
                let bad = (top + 1..nr)
                    .flat_map(|i| (top + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[top][top]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in top..cols {
                            let add = m[i][j].clone();
                            m[top][j] += add;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // Move the smallest nonzero entry of the pivot row/column to the corner.
            let mut best = (top, top);
            for i in top..nr {
                if !m[i][top].is_zero() && m[i][top].abs() < m[best.0][best.1].abs() {
                    best = (i, top);
                }
            }
            for j in top..cols {
                if !m[top][j].is_zero() && m[top][j].abs() < m[best.0][best.1].abs() {
                    best = (top, j);
                }
            }
            if best.1 == top {
                m.swap(top, best.0);
            } else {
                for row in m.iter_mut() {
                    row.swap(top, best.1);
                }
            }
        }
        diag.push(m[top][top].abs());
        top += 1;
    }
    diag
}

/// Invariant factors of ℤ^cols / rowspace.
pub fn abelian_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let diag = smith_diagonal(rows, cols);
    AbelianInvariants {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect(),
    }
}
