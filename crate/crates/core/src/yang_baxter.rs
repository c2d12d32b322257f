//! Numerical checks of the Yang–Baxter equation, its three-matrix variant and
//! tensor-product braid representations.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

pub type CMatrix = DMatrix<Complex64>;

/// Matrices agreeing to this tolerance count as equal.
pub const EXACT_TOL: f64 = 1e-12;
/// Residuals above this refute an equation.
pub const REFUTE_TOL: f64 = 1e-6;

/// An operator on ℂ^d ⊗ ℂ^d.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    d: usize,
    m: CMatrix,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    d: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl RMatrix {
    pub fn new(d: usize, m: CMatrix) -> Result<Self> {
        if d == 0 || m.nrows() != d * d || m.ncols() != d * d {
            return Err(Error::Invalid(format!("expected a {0}×{0} matrix for d = {d}", d * d)));
        }
        Ok(RMatrix { d, m })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn identity(d: usize) -> Self {
        RMatrix { d, m: CMatrix::identity(d * d, d * d) }
    }

    /// x ⊗ y ↦ y ⊗ x.
    pub fn swap(d: usize) -> Self {
        let mut m = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m[(j * d + i, i * d + j)] = Complex64::new(1.0, 0.0);
            }
        }
        RMatrix { d, m }
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        RMatrix { d: self.d, m: self.m.map(|x| x * z) }
    }

    /// e^{iθ}·SWAP.
    pub fn phase_swap(d: usize, theta: f64) -> Self {
        Self::swap(d).scaled(Complex64::from_polar(1.0, theta))
    }

    /// Random unitary on ℂ^d ⊗ ℂ^d.
    pub fn random_unitary(d: usize, seed: u64) -> Self {
        RMatrix { d, m: random_unitary_matrix(d * d, seed) }
    }

    /// Conjugation by V ⊗ V.
    pub fn conjugate_by(&self, v: &CMatrix) -> Self {
        let vv = v.kronecker(v);
        RMatrix { d: self.d, m: &vv * &self.m * vv.adjoint() }
    }

    pub fn unitarity_defect(&self) -> f64 {
        let n = self.d * self.d;
        (self.m.adjoint() * &self.m - CMatrix::identity(n, n)).norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.d * self.d;
        let rows = |f: fn(&Complex64) -> f64| (0..n).map(|i| (0..n).map(|j| f(&self.m[(i, j)])).collect()).collect();
        serde_json::to_value(MatrixFile { d: self.d, re: rows(|z| z.re), im: rows(|z| z.im) }).unwrap()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let f: MatrixFile = serde_json::from_str(text)?;
        let n = f.d * f.d;
        if f.re.len() != n || f.im.len() != n || f.re.iter().chain(&f.im).any(|r| r.len() != n) {
            return Err(Error::Parse(format!("matrix rows must have {n} entries")));
        }
        RMatrix::new(f.d, CMatrix::from_fn(n, n, |i, j| Complex64::new(f.re[i][j], f.im[i][j])))
    }
}

/// Haar-like random n×n unitary from the QR factorization of a seeded Gaussian-ish matrix.
pub fn random_unitary_matrix(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let qr = g.qr();
    let (mut u, r) = (qr.q(), qr.r());
    // Fix column phases so the factorization is unique.
    for j in 0..n {
        let p = r[(j, j)];
        if p.norm() > 0.0 {
            let phase = p / p.norm();
            u.column_mut(j).iter_mut().for_each(|x| *x *= phase);
        }
    }
    u
}

fn one(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// ‖(R⊗1)(1⊗R′)(R″⊗1) − (1⊗R″)(R′⊗1)(1⊗R)‖_F.
pub fn mixed_yb_residual(r: &RMatrix, r1: &RMatrix, r2: &RMatrix) -> Result<f64> {
    let d = r.d;
    if r1.d != d || r2.d != d {
        return Err(Error::Invalid("R-matrices of different dimensions".into()));
    }
    let left = |x: &RMatrix| x.m.kronecker(&one(d));
    let right = |x: &RMatrix| one(d).kronecker(&x.m);
    let lhs = left(r) * right(r1) * left(r2);
    let rhs = right(r2) * left(r1) * right(r);
    Ok((lhs - rhs).norm())
}

/// ‖(R⊗1)(1⊗R)(R⊗1) − (1⊗R)(R⊗1)(1⊗R)‖_F.
pub fn yb_residual(r: &RMatrix) -> f64 {
    mixed_yb_residual(r, r, r).expect("same dimension")
}

/// One row of a phase scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub theta: [f64; 3],
    pub residual: f64,
}

/// Mixed residual of (e^{iθ₁}SWAP, e^{iθ₂}SWAP, e^{iθ₃}SWAP) over a `steps`³ grid of [0, 2π).
pub fn phase_swap_scan(d: usize, steps: usize, exec: Exec) -> Vec<ScanRow> {
    let angle = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
    exec.flat_map_range(steps * steps * steps, |idx| {
        let theta = [angle(idx / (steps * steps)), angle((idx / steps) % steps), angle(idx % steps)];
        let [a, b, c] = theta.map(|t| RMatrix::phase_swap(d, t));
        vec![ScanRow { theta, residual: mixed_yb_residual(&a, &b, &c).unwrap() }]
    })
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("theta1,theta2,theta3,residual\n");
    for r in rows {
        out.push_str(&format!("{:.6},{:.6},{:.6},{:.3e}\n", r.theta[0], r.theta[1], r.theta[2], r.residual));
    }
    out
}

/// Which of the three R-matrices a generator uses: leaf pairs (1,2), (1,3), (2,3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    First,
    Second,
    Third,
}

/// σ_i with its R-matrix slot, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepLetter {
    pub index: usize,
    pub slot: Slot,
    pub inv: bool,
}

/// Relators of the one-particle quotient of the four-edge theta graph: the three-slot
/// braid relation at neighbouring positions and commutation at distance ≥ 2.
pub fn theta4_quotient_relators(n: usize) -> Vec<Vec<RepLetter>> {
    use Slot::*;
    let l = |index, slot, inv| RepLetter { index, slot, inv };
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        // σ_i^{12} σ_{i+1}^{13} σ_i^{23} = σ_{i+1}^{23} σ_i^{13} σ_{i+1}^{12}
        out.push(vec![
            l(i, First, false),
            l(i + 1, Second, false),
            l(i, Third, false),
            l(i + 1, First, true),
            l(i, Second, true),
            l(i + 1, Third, true),
        ]);
    }
    let slots = [First, Second, Third];
    for i in 1..n {
        for j in i + 2..n {
            for a in slots {
                for b in slots {
                    out.push(vec![l(i, a, false), l(j, b, false), l(i, a, true), l(j, b, true)]);
                }
            }
        }
    }
    out
}

/// Distance from the identity of each relator under σ_i ↦ 1 ⊗ … ⊗ R_slot ⊗ … ⊗ 1.
#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub strands: usize,
    pub distances: Vec<f64>,
}

impl RepReport {
    pub fn max_distance(&self) -> f64 {
        self.distances.iter().copied().fold(0.0, f64::max)
    }
}

pub fn braid_rep_check(n: usize, matrices: [&RMatrix; 3], relators: &[Vec<RepLetter>], exec: Exec) -> Result<RepReport> {
    let d = matrices[0].d;
    if matrices.iter().any(|m| m.d != d) {
        return Err(Error::Invalid("R-matrices of different dimensions".into()));
    }
    let size = d.checked_pow(n as u32).filter(|s| *s <= 243 && n <= 5 && d <= 3);
    let Some(size) = size else {
        return Err(Error::Invalid(format!("d^n too large for d = {d}, n = {n} (limit 243, n ≤ 5, d ≤ 3)")));
    };
    let op = |letter: &RepLetter| -> Result<CMatrix> {
        if letter.index == 0 || letter.index >= n {
            return Err(Error::Invalid(format!("σ_{} out of range", letter.index)));
        }
        let r = match letter.slot {
            Slot::First => matrices[0],
            Slot::Second => matrices[1],
            Slot::Third => matrices[2],
        };
        let m = if letter.inv { r.m.adjoint() } else { r.m.clone() };
        let before = d.pow(letter.index as u32 - 1);
        let after = d.pow((n - letter.index - 1) as u32);
        Ok(one(before).kronecker(&m).kronecker(&one(after)))
    };
    let distances = exec.map(relators, |rel| -> Result<f64> {
        let mut acc = CMatrix::identity(size, size);
        for l in rel {
            acc *= op(l)?;
        }
        Ok((acc - CMatrix::identity(size, size)).norm())
    });
    Ok(RepReport { strands: n, distances: distances.into_iter().collect::<Result<_>>()? })
}
