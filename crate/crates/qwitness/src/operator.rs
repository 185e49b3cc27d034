//! Dense complex linear algebra and Pauli algebra for 1-3 qubit registers.
//!
//! Everything is sized for registers of at most three qubits (8x8), which is
//! all the copy protocols ever need. Matrices are dense, row-major and
//! immutable after construction.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Dimension cap: three qubit-sized factors.
pub const MAX_DIM: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_register_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        d if d > MAX_DIM => Err(Error::DimensionOverflow(d)),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Dense complex square matrix of dimension 2, 4 or 8.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

impl Operator {
    /// All-zero matrix.
    pub fn zeros(dim: usize) -> Result<Self> {
        check_register_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        Ok(m)
    }

    /// Build from a row-major slice of entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        check_register_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self {
            dim,
            data: entries.to_vec(),
        })
    }

    /// Build from real row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let complexed: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(dim, &complexed)
    }

    /// Outer product |v><v| of a (not necessarily normalized) column vector.
    pub fn from_outer(ket: &[Complex64]) -> Result<Self> {
        let dim = ket.len();
        check_register_dim(dim)?;
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, ket[i] * ket[j].conj());
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// u * self * u^dagger.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u * &(self * &u.dagger())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, atol: f64) -> bool {
        self.hermiticity_defect() <= atol
    }

    pub fn is_unitary(&self, atol: f64) -> bool {
        let product = self * &self.dagger();
        let id = Operator::identity(self.dim).expect("dim already validated");
        product.max_abs_diff(&id) <= atol
    }

    /// Positive semidefinite within the given eigenvalue floor.
    pub fn is_psd(&self, eig_floor: f64) -> bool {
        if !self.is_hermitian(tol::ATOL_PREDICATE) {
            return false;
        }
        let (eigs, _) = eigendecompose_hermitian(self).expect("hermitian checked");
        eigs[0] >= eig_floor
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Operator::zeros(n).expect("dim already validated");
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == ZERO {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + aik * rhs.get(k, j));
                }
            }
        }
        out
    }
}

/// Kronecker product. Fails once the result would exceed the 8x8 cap.
pub fn kron(a: &Operator, b: &Operator) -> Result<Operator> {
    let dim = a.dim() * b.dim();
    if dim > MAX_DIM {
        return Err(Error::DimensionOverflow(dim));
    }
    let mut out = Operator::zeros(dim)?;
    for ia in 0..a.dim() {
        for ja in 0..a.dim() {
            let f = a.get(ia, ja);
            if f == ZERO {
                continue;
            }
            for ib in 0..b.dim() {
                for jb in 0..b.dim() {
                    out.set(ia * b.dim() + ib, ja * b.dim() + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    Ok(out)
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// The 2x2 matrix of a Pauli label. Z is diag(1, -1); |0> is the +1
/// eigenstate of Z.
pub fn pauli_matrix(label: Pauli) -> Operator {
    let i = Complex64::new(0.0, 1.0);
    let rows: [Complex64; 4] = match label {
        Pauli::I => [ONE, ZERO, ZERO, ONE],
        Pauli::X => [ZERO, ONE, ONE, ZERO],
        Pauli::Y => [ZERO, -i, i, ZERO],
        Pauli::Z => [ONE, ZERO, ZERO, -ONE],
    };
    Operator::from_row_major(2, &rows).expect("2x2 is always valid")
}

/// Tensor product of 1-3 Pauli factors, leftmost factor = subsystem 1 =
/// most significant bit of the computational-basis index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    factors: Vec<Pauli>,
}

impl PauliString {
    pub fn new(factors: &[Pauli]) -> Result<Self> {
        if factors.is_empty() || factors.len() > 3 {
            return Err(Error::InvalidParameter {
                name: "factors",
                reason: format!("length {} outside 1..=3", factors.len()),
            });
        }
        Ok(Self {
            factors: factors.to_vec(),
        })
    }

    /// Two-factor string, the common case in the protocols.
    pub fn two(first: Pauli, second: Pauli) -> Self {
        Self {
            factors: vec![first, second],
        }
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|&p| p == Pauli::I)
    }

    /// Dense matrix of the string.
    pub fn materialize(&self) -> Operator {
        let mut out = pauli_matrix(self.factors[0]);
        for &p in &self.factors[1..] {
            out = kron(&out, &pauli_matrix(p)).expect("<= 3 factors");
        }
        out
    }

    pub fn label(&self) -> String {
        self.factors.iter().map(|p| p.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let factors: Option<Vec<Pauli>> = s.chars().map(Pauli::from_char).collect();
        let factors = factors.ok_or(Error::InvalidParameter {
            name: "pauli_string",
            reason: format!("unrecognized label {s:?}"),
        })?;
        Self::new(&factors)
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Density matrix: unit trace, Hermitian, positive semidefinite (all within
/// the central tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    op: Operator,
}

impl DensityState {
    pub fn new(op: Operator) -> Result<Self> {
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol::ATOL_TRACE || tr.im.abs() > tol::ATOL_TRACE {
            return Err(Error::InvalidDensity(format!(
                "trace {:+.3e}{:+.3e}i != 1",
                tr.re, tr.im
            )));
        }
        let defect = op.hermiticity_defect();
        if defect > tol::ATOL_TRACE.max(1e-12) {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {defect:.3e}"
            )));
        }
        let (eigs, _) = eigendecompose_hermitian(&op)?;
        if eigs[0] < tol::PSD_EIG_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "minimum eigenvalue {:.3e}",
                eigs[0]
            )));
        }
        Ok(Self { op })
    }

    /// Pure state from a normalized ket.
    pub fn from_pure(ket: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDensity(format!(
                "ket norm^2 = {norm_sqr:.6} != 1"
            )));
        }
        Self::new(Operator::from_outer(ket)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Ok(Self {
            op: Operator::identity(dim)?.scale_re(1.0 / dim as f64),
        })
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    /// Number of qubit factors (dim = 2^n).
    pub fn qubit_count(&self) -> usize {
        self.op.dim().trailing_zeros() as usize
    }
}

/// Tr(rho * obs) for a Hermitian observable, reduced to a real number.
pub fn expectation(rho: &DensityState, obs: &Operator) -> Result<f64> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), obs.dim()));
    }
    if !obs.is_hermitian(tol::ATOL_PREDICATE) {
        return Err(Error::NotHermitian(obs.hermiticity_defect()));
    }
    let tr = (rho.op() * obs).trace();
    if tr.im.abs() > tol::ATOL_IMAG {
        return Err(Error::InvalidDensity(format!(
            "expectation has imaginary part {:.3e}",
            tr.im
        )));
    }
    Ok(tr.re)
}

/// Reduced state on the listed qubit factors (0-based, ascending, factor 0 =
/// most significant bit).
pub fn partial_trace(rho: &DensityState, keep: &[usize]) -> Result<DensityState> {
    let n = rho.qubit_count();
    if keep.is_empty() {
        return Err(Error::InvalidSubsystems("empty keep set".into()));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::InvalidSubsystems(format!("duplicate indices in {keep:?}")));
    }
    if *sorted.last().unwrap() >= n {
        return Err(Error::InvalidSubsystems(format!(
            "index {} out of range for {} factors",
            sorted.last().unwrap(),
            n
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|i| !sorted.contains(i)).collect();
    let keep_dim = 1usize << sorted.len();
    let trace_dim = 1usize << traced.len();

    // factor 0 = most significant bit of a basis index
    let mut out = Operator::zeros(keep_dim)?;
    for row_keep in 0..keep_dim {
        for col_keep in 0..keep_dim {
            let mut acc = ZERO;
            for tr_idx in 0..trace_dim {
                let mut row_full = 0usize;
                let mut col_full = 0usize;
                for (pos, &f) in sorted.iter().enumerate() {
                    let rb = (row_keep >> (sorted.len() - 1 - pos)) & 1;
                    let cb = (col_keep >> (sorted.len() - 1 - pos)) & 1;
                    row_full |= rb << (n - 1 - f);
                    col_full |= cb << (n - 1 - f);
                }
                for (pos, &f) in traced.iter().enumerate() {
                    let tb = (tr_idx >> (traced.len() - 1 - pos)) & 1;
                    row_full |= tb << (n - 1 - f);
                    col_full |= tb << (n - 1 - f);
                }
                acc += rho.op().get(row_full, col_full);
            }
            out.set(row_keep, col_keep, acc);
        }
    }
    DensityState::new(out)
}

/// Half the trace norm of (a - b).
pub fn trace_distance(a: &DensityState, b: &DensityState) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let diff = a.op() - b.op();
    let (eigs, _) = eigendecompose_hermitian(&diff)?;
    Ok(0.5 * eigs.iter().map(|e| e.abs()).sum::<f64>())
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Returns eigenvalues sorted ascending and the matching eigenvectors as the
/// columns of a unitary matrix.
pub fn eigendecompose_hermitian(m: &Operator) -> Result<(Vec<f64>, Operator)> {
    if !m.is_hermitian(tol::ATOL_PREDICATE) {
        return Err(Error::NotHermitian(m.hermiticity_defect()));
    }
    let n = m.dim();
    let mut a = m.clone();
    // force exact Hermiticity so rounding cannot accumulate asymmetry
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a.get(i, j) + a.get(j, i).conj());
            a.set(i, j, avg);
            a.set(j, i, avg.conj());
        }
        let d = a.get(i, i);
        a.set(i, i, Complex64::new(d.re, 0.0));
    }
    let mut v = Operator::identity(n)?;

    let off_norm = |a: &Operator| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    for _sweep in 0..200 {
        if off_norm(&a) <= tol::EIGEN_OFFDIAG_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.norm() <= tol::EIGEN_OFFDIAG_TOL / (n as f64) {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // phase that makes the off-diagonal entry real, then a real
                // Jacobi rotation on the resulting symmetric 2x2 block
                let phase = apq / apq.norm(); // e^{i phi}
                let beta = apq.norm();
                let theta = 0.5 * (2.0 * beta).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                // J restricted to (p,q): [[c, -s], [s e^{-i phi}, c e^{-i phi}]]
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(-s, 0.0);
                let jqp = phase.conj() * s;
                let jqq = phase.conj() * c;

                // A <- J^dagger A J applied to columns then rows
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp * jpp + arq * jqp);
                    a.set(r, q, arp * jpq + arq * jqq);
                }
                for ccol in 0..n {
                    let apc = a.get(p, ccol);
                    let aqc = a.get(q, ccol);
                    a.set(p, ccol, jpp.conj() * apc + jqp.conj() * aqc);
                    a.set(q, ccol, jpq.conj() * apc + jqq.conj() * aqc);
                }
                // V <- V J
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, vrp * jpp + vrq * jqp);
                    v.set(r, q, vrp * jpq + vrq * jqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs_raw: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigs_raw[i].partial_cmp(&eigs_raw[j]).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| eigs_raw[i]).collect();
    let mut vectors = Operator::zeros(n)?;
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok((eigs, vectors))
}

/// Rebuild V diag(eigs) V^dagger; used by callers that transform spectra.
pub fn from_eigensystem(eigs: &[f64], vectors: &Operator) -> Operator {
    let n = vectors.dim();
    let mut out = Operator::zeros(n).expect("dim validated by caller");
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += vectors.get(i, k) * Complex64::new(eigs[k], 0.0) * vectors.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_z_is_diag_plus_minus_one() {
        let z = pauli_matrix(Pauli::Z);
        assert_eq!(z.get(0, 0), c(1.0, 0.0));
        assert_eq!(z.get(1, 1), c(-1.0, 0.0));
        assert_eq!(z.get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn paulis_square_to_identity() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let m = pauli_matrix(p);
            let sq = &m * &m;
            assert!(sq.max_abs_diff(&Operator::identity(2).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn nontrivial_paulis_are_traceless_hermitian_unitary() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let m = pauli_matrix(p);
            assert!(m.trace().norm() < 1e-15);
            assert!(m.is_hermitian(1e-15));
            assert!(m.is_unitary(1e-15));
        }
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Operator::identity(2).unwrap();
        let i4 = kron(&i2, &i2).unwrap();
        assert!(i4.max_abs_diff(&Operator::identity(4).unwrap()) < 1e-15);
    }

    #[test]
    fn kron_mixed_product_property() {
        let x = pauli_matrix(Pauli::X);
        let i2 = Operator::identity(2).unwrap();
        let lhs = &kron(&x, &i2).unwrap() * &kron(&i2, &x).unwrap();
        let rhs = kron(&x, &x).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
    }

    #[test]
    fn kron_zz_on_00_has_eigenvalue_plus_one() {
        let zz = kron(&pauli_matrix(Pauli::Z), &pauli_matrix(Pauli::Z)).unwrap();
        assert_eq!(zz.get(0, 0), c(1.0, 0.0));
    }

    #[test]
    fn kron_overflow_rejected() {
        let i4 = Operator::identity(4).unwrap();
        assert!(matches!(kron(&i4, &i4), Err(Error::DimensionOverflow(16))));
    }

    #[test]
    fn expectation_of_traceless_obs_in_mixed_state_is_zero() {
        let rho = DensityState::maximally_mixed(4).unwrap();
        let zz = PauliString::two(Pauli::Z, Pauli::Z).materialize();
        assert!(expectation(&rho, &zz).unwrap().abs() < 1e-14);
    }

    #[test]
    fn expectation_in_eigenstate() {
        let ket00 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let rho = DensityState::from_pure(&ket00).unwrap();
        let zz = PauliString::two(Pauli::Z, Pauli::Z).materialize();
        assert!((expectation(&rho, &zz).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expectation_bell_xz_matches_direct_trace() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let rho = DensityState::from_pure(&phi_plus).unwrap();
        let xz = PauliString::two(Pauli::X, Pauli::Z).materialize();
        // oracle: explicit sum over entries of rho * XZ
        let mut oracle = c(0.0, 0.0);
        for i in 0..4 {
            for k in 0..4 {
                oracle += rho.op().get(i, k) * xz.get(k, i);
            }
        }
        assert!(oracle.norm() < 1e-14);
        assert!(expectation(&rho, &xz).unwrap().abs() < 1e-14);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let rho = DensityState::maximally_mixed(2).unwrap();
        let mut m = Operator::zeros(2).unwrap();
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(expectation(&rho, &m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let ket0 = [c(1.0, 0.0), c(0.0, 0.0)];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket_plus = [c(s, 0.0), c(s, 0.0)];
        let joint = kron(
            &Operator::from_outer(&ket0).unwrap(),
            &Operator::from_outer(&ket_plus).unwrap(),
        )
        .unwrap();
        let rho = DensityState::new(joint).unwrap();
        let first = partial_trace(&rho, &[0]).unwrap();
        let expected = DensityState::from_pure(&ket0).unwrap();
        assert!(first.op().max_abs_diff(expected.op()) < 1e-14);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let rho = DensityState::from_pure(&phi_plus).unwrap();
        let red = partial_trace(&rho, &[0]).unwrap();
        let mixed = DensityState::maximally_mixed(2).unwrap();
        assert!(red.op().max_abs_diff(mixed.op()) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_index() {
        let rho = DensityState::maximally_mixed(4).unwrap();
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
    }

    #[test]
    fn trace_distance_identical_states() {
        let rho = DensityState::maximally_mixed(4).unwrap();
        assert!(trace_distance(&rho, &rho).unwrap() < 1e-14);
    }

    #[test]
    fn trace_distance_orthogonal_pure_states() {
        let a = DensityState::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = DensityState::from_pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_zero_vs_plus() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let zero = DensityState::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let plus = DensityState::from_pure(&[c(s, 0.0), c(s, 0.0)]).unwrap();
        // oracle: eigenvalues of the difference matrix [[1/2, -1/2], [-1/2, -1/2]]
        // are +-1/sqrt(2), so the distance is 1/sqrt(2)
        let expected = std::f64::consts::FRAC_1_SQRT_2;
        assert!((trace_distance(&zero, &plus).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn eigendecompose_pauli_z() {
        let (eigs, v) = eigendecompose_hermitian(&pauli_matrix(Pauli::Z)).unwrap();
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
        assert!(v.is_unitary(1e-12));
    }

    #[test]
    fn eigendecompose_identity() {
        let (eigs, _) = eigendecompose_hermitian(&Operator::identity(4).unwrap()).unwrap();
        for e in eigs {
            assert!((e - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eigendecompose_quarter_i_plus_zz() {
        let zz = PauliString::two(Pauli::Z, Pauli::Z).materialize();
        let m = (&Operator::identity(4).unwrap() + &zz).scale_re(0.25);
        let (eigs, v) = eigendecompose_hermitian(&m).unwrap();
        // diagonal matrix diag(1/2, 0, 0, 1/2): eigenvalues 0, 0, 1/2, 1/2
        assert!((eigs[0]).abs() < 1e-12);
        assert!((eigs[1]).abs() < 1e-12);
        assert!((eigs[2] - 0.5).abs() < 1e-12);
        assert!((eigs[3] - 0.5).abs() < 1e-12);
        let recon = from_eigensystem(&eigs, &v);
        assert!(recon.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn eigendecompose_rejects_non_hermitian() {
        let mut m = Operator::zeros(2).unwrap();
        m.set(0, 1, c(1.0, 0.0));
        assert!(eigendecompose_hermitian(&m).is_err());
    }

    #[test]
    fn pauli_string_roundtrip_and_materialization() {
        let ps: PauliString = "XZ".parse().unwrap();
        assert_eq!(ps.label(), "XZ");
        let m = ps.materialize();
        assert!(m.is_hermitian(1e-15));
        assert!(m.is_unitary(1e-15));
        assert!(m.trace().norm() < 1e-15);
    }

    #[test]
    fn pauli_basis_orthogonality() {
        // Tr(P Q) = dim * delta_{PQ} over all two-factor strings
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                for p in Pauli::ALL {
                    for q in Pauli::ALL {
                        let m1 = PauliString::two(a, b).materialize();
                        let m2 = PauliString::two(p, q).materialize();
                        let tr = (&m1 * &m2).trace();
                        let expected = if a == p && b == q { 4.0 } else { 0.0 };
                        assert!(
                            (tr.re - expected).abs() < 1e-12 && tr.im.abs() < 1e-12,
                            "Tr({}{} * {}{}) = {tr}",
                            a.as_char(),
                            b.as_char(),
                            p.as_char(),
                            q.as_char()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn density_state_rejects_negative_eigenvalue() {
        let z = pauli_matrix(Pauli::Z);
        // diag(1, 0) + 0.6 * offdiag symmetric has a negative eigenvalue
        let mut m = Operator::zeros(2).unwrap();
        m.set(0, 0, c(1.0, 0.0));
        m.set(0, 1, c(0.6, 0.0));
        m.set(1, 0, c(0.6, 0.0));
        assert!(DensityState::new(m).is_err());
        let _ = z;
    }

    #[test]
    fn density_state_rejects_wrong_trace() {
        let m = Operator::identity(2).unwrap();
        assert!(DensityState::new(m).is_err());
    }
}
