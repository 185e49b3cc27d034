//! State preparation and the dephasing-invariant two-qubit family.
//!
//! Side 1 is the probe qubit, side 2 the system whose only direct observable
//! is Z. The seven-parameter family (r, s_z, t) spans exactly the states
//! with no X or Y component on side 2, i.e. the states invariant under
//! z-dephasing of side 2.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    expectation, kron, pauli_matrix, trace_distance, DensityState, Operator, Pauli, PauliString,
};
use crate::tol;

/// Probe preparation sign: the +-1 eigenstates of X on side 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "plus")]
    Plus,
    #[serde(rename = "minus")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Protocol stage marker for a prepared state pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    #[serde(rename = "after-first-copy")]
    AfterFirstCopy,
    #[serde(rename = "after-second-copy")]
    AfterSecondCopy,
}

/// The pair of states produced by one protocol stage.
#[derive(Debug, Clone)]
pub struct ProtocolStates {
    pub rho_plus: DensityState,
    pub rho_minus: DensityState,
    pub stage: Stage,
}

/// Seven-parameter state family: local Bloch vector `r` of the qubit, the
/// z moment `s_z` of side 2, and the cross-correlation vector `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalBlochState {
    pub r: [f64; 3],
    pub s_z: f64,
    pub t: [f64; 3],
}

impl ClassicalBlochState {
    pub fn new(r: [f64; 3], s_z: f64, t: [f64; 3]) -> Self {
        Self { r, s_z, t }
    }

    pub fn zero() -> Self {
        Self::new([0.0; 3], 0.0, [0.0; 3])
    }

    /// Parameters as a flat 7-vector (r, s_z, t), the order used by the
    /// uniqueness search.
    pub fn as_params(&self) -> [f64; 7] {
        [
            self.r[0], self.r[1], self.r[2], self.s_z, self.t[0], self.t[1], self.t[2],
        ]
    }

    pub fn from_params(p: &[f64; 7]) -> Self {
        Self::new([p[0], p[1], p[2]], p[3], [p[4], p[5], p[6]])
    }

    /// The matrix (I + r.sigma x I + s_z I x Z + sum_a t_a sigma_a x Z) / 4
    /// without the positivity check; used by predicates that must inspect
    /// non-physical parameter points.
    pub fn materialize_raw(&self) -> Operator {
        let i4 = Operator::identity(4).expect("4 is a register dim");
        let mut acc = i4;
        let axes = [Pauli::X, Pauli::Y, Pauli::Z];
        for (k, &p) in axes.iter().enumerate() {
            if self.r[k] != 0.0 {
                acc = &acc + &PauliString::two(p, Pauli::I).materialize().scale_re(self.r[k]);
            }
            if self.t[k] != 0.0 {
                acc = &acc + &PauliString::two(p, Pauli::Z).materialize().scale_re(self.t[k]);
            }
        }
        if self.s_z != 0.0 {
            acc = &acc + &PauliString::two(Pauli::I, Pauli::Z).materialize().scale_re(self.s_z);
        }
        acc.scale_re(0.25)
    }

    /// True if the materialized matrix is positive semidefinite.
    pub fn is_physical(&self) -> bool {
        self.materialize_raw().is_psd(tol::PSD_EIG_FLOOR)
    }
}

/// Materialize the family member as a density state.
///
/// Fails if the parameters lie outside the positivity body.
pub fn bloch_to_state(b: &ClassicalBlochState) -> Result<DensityState> {
    let m = b.materialize_raw();
    DensityState::new(m).map_err(|_| Error::InvalidParameter {
        name: "bloch",
        reason: format!("parameters {b:?} give a non-PSD matrix"),
    })
}

/// Project a two-qubit state onto the family.
///
/// Returns the moments (r, s_z, t) and the Frobenius norm of what is left
/// over, i.e. the X/Y-on-side-2 sector. The residual vanishes exactly on
/// family members.
pub fn state_to_bloch(rho: &DensityState) -> Result<(ClassicalBlochState, f64)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(rho.dim(), 4));
    }
    let axes = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut r = [0.0; 3];
    let mut t = [0.0; 3];
    for (k, &p) in axes.iter().enumerate() {
        r[k] = expectation(rho, &PauliString::two(p, Pauli::I).materialize())?;
        t[k] = expectation(rho, &PauliString::two(p, Pauli::Z).materialize())?;
    }
    let s_z = expectation(rho, &PauliString::two(Pauli::I, Pauli::Z).materialize())?;
    let b = ClassicalBlochState::new(r, s_z, t);
    let residual = (rho.op() - &b.materialize_raw()).frobenius_norm();
    Ok((b, residual))
}

/// |+> or |-> on the probe qubit, |0> on side 2 (the state where the side-2
/// observable is sharp with value +1).
pub fn prepare_initial(sign: Sign) -> DensityState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amp = Complex64::new(s, 0.0);
    let probe = match sign {
        Sign::Plus => [amp, amp],
        Sign::Minus => [amp, -amp],
    };
    let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let joint = kron(
        &Operator::from_outer(&probe).expect("qubit ket"),
        &Operator::from_outer(&zero).expect("qubit ket"),
    )
    .expect("4 <= 8");
    DensityState::new(joint).expect("pure product state is valid")
}

/// Full z-dephasing of side 2 applied to a raw 4x4 operator.
pub fn dephase_side2_op(op: &Operator) -> Operator {
    assert_eq!(op.dim(), 4, "side-2 dephasing is defined on two qubits");
    let p0 = Operator::from_outer(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
        .expect("qubit ket");
    let p1 = Operator::from_outer(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
        .expect("qubit ket");
    let i2 = Operator::identity(2).expect("register dim");
    let k0 = kron(&i2, &p0).expect("4 <= 8");
    let k1 = kron(&i2, &p1).expect("4 <= 8");
    &(&k0 * &(op * &k0)) + &(&k1 * &(op * &k1))
}

/// True if the state is invariant under full z-dephasing of side 2 within
/// `tolerance` (trace distance). This is the operational reading of "side 2
/// carries no quantum coherence relative to its single observable".
pub fn is_discord_free_cq(rho: &DensityState, tolerance: f64) -> Result<bool> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(rho.dim(), 4));
    }
    let dephased = DensityState::new(dephase_side2_op(rho.op()))
        .expect("dephasing preserves density-state structure");
    Ok(trace_distance(rho, &dephased)? <= tolerance)
}

pub(crate) fn ket(amplitudes: &[(f64, f64)]) -> Vec<Complex64> {
    amplitudes
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect()
}

/// Computational basis state |index> of a register with the given dimension.
pub fn basis_state(dim: usize, index: usize) -> Result<DensityState> {
    if index >= dim {
        return Err(Error::InvalidSubsystems(format!(
            "basis index {index} out of range for dim {dim}"
        )));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[index] = Complex64::new(1.0, 0.0);
    DensityState::from_pure(&amps)
}
