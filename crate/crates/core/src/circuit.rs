//! Device parameters and the charge-basis Hamiltonian of the π-SQUID qubit.
//!
//! Units: ħ = 2e = 1 and Φ₀ = 2π, so energies are angular frequencies
//! (rad/ns when times are in ns), fluxes are phases and the offset charge `Q`
//! counts Cooper pairs.
//!
//! The island energy is `H = E_C (n - Q)² + E(φ)` with the π-periodic
//! Josephson term
//!
//! ```text
//! E(φ) = -E₂ cos(2φ - Φ) - E₂' cos(2φ + Φ) = -E₂eff(Φ) cos(2φ - 2Φ̃(Φ))
//! ```
//!
//! Expanding the left-hand side fixes the phase convention used throughout:
//!
//! ```text
//! E₂eff cos 2Φ̃ = (E₂ + E₂') cos Φ,    E₂eff sin 2Φ̃ = (E₂ - E₂') sin Φ
//! ```
//!
//! i.e. `E₂eff e^{2iΦ̃}` is the complex number returned by [`coupling`]. Since
//! `e^{2iφ}|n⟩ = |n+2⟩`, the Hamiltonian couples `⟨n+2|H|n⟩ = -(E₂eff/2) e^{-2iΦ̃}`
//! and only connects charges of equal parity. With this sign the gauge
//! rotation `ψ(n) = e^{-inΦ̃} ψ₀(n)` maps eigenvectors of the real problem
//! (Φ̃ = 0) onto eigenvectors of the full one, exactly.

use crate::error::{invalid, require_finite, Error, Result};
use crate::tridiag;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Ground states flagged as degenerate when the in-sector gap falls below
/// this multiple of `E_C`.
pub const NEAR_DEGENERACY_TOL: f64 = 1e-6;

/// Relative size below which `E₂eff` (or a field component) counts as zero;
/// `cos(π/2)` is not exactly zero in floating point.
const ROUNDOFF: f64 = 8.0 * f64::EPSILON;

/// Default truncation for static (spectral and Berry-phase) calculations.
pub const DEFAULT_N_MAX: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub e2: f64,
    pub e2_prime: f64,
    pub e_c: f64,
}

impl CircuitParams {
    pub fn new(e2: f64, e2_prime: f64, e_c: f64) -> Result<Self> {
        require_finite(e2, "e2")?;
        require_finite(e2_prime, "e2_prime")?;
        require_finite(e_c, "e_c")?;
        if e2 <= 0.0 || e2_prime <= 0.0 {
            return Err(invalid("e2", "Josephson energies must be positive"));
        }
        if e_c <= 0.0 {
            return Err(invalid("e_c", "charging energy must be positive"));
        }
        Ok(Self { e2, e2_prime, e_c })
    }

    /// Build from `E_Σ`, the dimensionless charging energy `e_C = 2E_C/E_Σ`
    /// and the asymmetry ratio `η = δ/e_C`, with `E₂ ≥ E₂'`.
    pub fn from_ratios(e_sigma: f64, e_c_dimless: f64, eta: f64) -> Result<Self> {
        require_finite(e_sigma, "e_sigma")?;
        require_finite(e_c_dimless, "e_c_dimless")?;
        require_finite(eta, "eta")?;
        if e_sigma <= 0.0 || e_c_dimless <= 0.0 {
            return Err(invalid("e_sigma", "E_sigma and e_C must be positive"));
        }
        if eta < 0.0 {
            return Err(invalid("eta", "must be non-negative"));
        }
        let delta = eta * e_c_dimless;
        if delta >= 1.0 {
            return Err(invalid("eta", format!("delta = eta * e_C = {delta} must stay below 1")));
        }
        Self::new(0.5 * e_sigma * (1.0 + delta), 0.5 * e_sigma * (1.0 - delta), 0.5 * e_c_dimless * e_sigma)
    }

    /// Energies given as ordinary frequencies in GHz; stored as rad/ns.
    pub fn from_ghz(e2: f64, e2_prime: f64, e_c: f64) -> Result<Self> {
        let w = 2.0 * PI;
        Self::new(w * e2, w * e2_prime, w * e_c)
    }

    pub fn e_sigma(&self) -> f64 {
        self.e2 + self.e2_prime
    }

    pub fn delta(&self) -> f64 {
        (self.e2 - self.e2_prime).abs() / self.e_sigma()
    }

    pub fn e_c_dimless(&self) -> f64 {
        2.0 * self.e_c / self.e_sigma()
    }

    /// `η = |E₂' - E₂| / 2E_C`, identical to `delta / e_c_dimless`.
    pub fn eta(&self) -> f64 {
        (self.e2 - self.e2_prime).abs() / (2.0 * self.e_c)
    }

    /// Same device with `E₂` and `E₂'` swapped (reverses the rotation sense).
    pub fn mirrored(&self) -> Self {
        Self { e2: self.e2_prime, e2_prime: self.e2, e_c: self.e_c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPoint {
    pub phi: f64,
    pub q: f64,
}

impl ControlPoint {
    pub const fn new(phi: f64, q: f64) -> Self {
        Self { phi, q }
    }

    pub fn lerp(self, other: Self, s: f64) -> Self {
        Self { phi: self.phi + s * (other.phi - self.phi), q: self.q + s * (other.q - self.q) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Truncated charge basis `n ∈ {-n_max, …, n_max}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeBasis {
    pub n_max: usize,
}

impl Default for ChargeBasis {
    fn default() -> Self {
        Self { n_max: DEFAULT_N_MAX }
    }
}

impl ChargeBasis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::BasisTooSmall { n_max, min: 2 });
        }
        Ok(Self { n_max })
    }

    pub fn full_dim(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Charges of one parity sector in ascending order (neighbours differ by 2).
    pub fn charges(&self, parity: Parity) -> Vec<i64> {
        let m = self.n_max as i64;
        (-m..=m).filter(|&n| Parity::of(n) == parity).collect()
    }
}

/// `E₂eff e^{2iΦ̃} = (E₂ + E₂') cos Φ + i (E₂ - E₂') sin Φ`.
pub fn coupling(params: &CircuitParams, phi: f64) -> Complex64 {
    Complex64::new(params.e_sigma() * phi.cos(), (params.e2 - params.e2_prime) * phi.sin())
}

/// `E₂eff(Φ) = √(E₂² + E₂'² + 2E₂E₂' cos 2Φ)`.
pub fn effective_josephson(params: &CircuitParams, phi: f64) -> f64 {
    coupling(params, phi).norm()
}

/// Φ̃(Φ) on the principal branch `(-π/2, π/2]`; undefined where `E₂eff = 0`.
pub fn phase_offset(params: &CircuitParams, phi: f64) -> Result<f64> {
    let z = coupling(params, phi);
    if z.norm() <= ROUNDOFF * params.e_sigma() {
        return Err(Error::Undefined { what: "phase offset", phi, q: f64::NAN });
    }
    Ok(0.5 * z.im.atan2(z.re))
}

/// Φ̃ along a Φ sweep, continued across branch cuts so consecutive values
/// never jump by more than π/2.
pub fn phase_offset_sweep(params: &CircuitParams, phis: &[f64]) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = Vec::with_capacity(phis.len());
    for &phi in phis {
        let mut v = phase_offset(params, phi)?;
        if let Some(&prev) = out.last() {
            v += PI * ((prev - v) / PI).round();
        }
        out.push(v);
    }
    Ok(out)
}

/// Real symmetric tridiagonal form of one parity block after the gauge
/// rotation: `H = U T U†` with `U = diag(e^{-i n gauge})`.
#[derive(Debug, Clone)]
pub(crate) struct GaugedBlock {
    pub charges: Vec<i64>,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub gauge: f64,
}

impl GaugedBlock {
    /// Block with diagonal `E_C (n - q)² + shift` and uniform complex hopping
    /// `⟨n+2|H|n⟩ = hop`.
    pub fn new(charges: &[i64], e_c: f64, q: f64, hop: Complex64) -> Self {
        let diag = charges.iter().map(|&n| e_c * (n as f64 - q).powi(2)).collect();
        let mag = hop.norm();
        // hop = -|hop| e^{-2i·gauge}
        let gauge = if mag == 0.0 { 0.0 } else { 0.5 * (-hop.conj()).arg() };
        Self { charges: charges.to_vec(), diag, off: vec![-mag; charges.len() - 1], gauge }
    }

    pub fn at(params: &CircuitParams, point: ControlPoint, charges: &[i64]) -> Self {
        Self::new(charges, params.e_c, point.q, -0.5 * coupling(params, point.phi).conj())
    }

    pub fn phase(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, -(self.charges[k] as f64) * self.gauge)
    }

    pub fn lift(&self, v: &[f64]) -> Vec<Complex64> {
        v.iter().enumerate().map(|(k, &x)| self.phase(k) * x).collect()
    }
}

fn check_point(point: ControlPoint) -> Result<()> {
    require_finite(point.phi, "phi")?;
    require_finite(point.q, "q")
}

/// Dense Hamiltonian of the full basis, rows/columns ordered `n = -n_max..=n_max`.
pub fn build_hamiltonian(params: &CircuitParams, point: ControlPoint, basis: ChargeBasis) -> DMatrix<Complex64> {
    let dim = basis.full_dim();
    let m = basis.n_max as i64;
    let hop = -0.5 * coupling(params, point.phi).conj();
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let n = i as i64 - m;
        h[(i, i)] = Complex64::new(params.e_c * (n as f64 - point.q).powi(2), 0.0);
        if i + 2 < dim {
            h[(i + 2, i)] = hop;
            h[(i, i + 2)] = hop.conj();
        }
    }
    h
}

/// Dense Hamiltonian of a single parity block in the order of
/// [`ChargeBasis::charges`].
pub fn build_sector_hamiltonian(
    params: &CircuitParams,
    point: ControlPoint,
    parity: Parity,
    basis: ChargeBasis,
) -> DMatrix<Complex64> {
    let charges = basis.charges(parity);
    let dim = charges.len();
    let hop = -0.5 * coupling(params, point.phi).conj();
    let mut h = DMatrix::zeros(dim, dim);
    for (k, &n) in charges.iter().enumerate() {
        h[(k, k)] = Complex64::new(params.e_c * (n as f64 - point.q).powi(2), 0.0);
        if k + 1 < dim {
            h[(k + 1, k)] = hop;
            h[(k, k + 1)] = hop.conj();
        }
    }
    h
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub parity: Parity,
    pub charges: Vec<i64>,
    pub energies: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub gap: f64,
    pub near_degenerate: bool,
}

impl SpectralResult {
    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground(&self) -> &[Complex64] {
        &self.states[0]
    }
}

/// Complete spectrum of one parity block.
pub fn ground_state(
    params: &CircuitParams,
    point: ControlPoint,
    parity: Parity,
    basis: ChargeBasis,
) -> Result<SpectralResult> {
    check_point(point)?;
    let charges = basis.charges(parity);
    let block = GaugedBlock::at(params, point, &charges);
    let eig = tridiag::eigh(&block.diag, &block.off)?;
    let states = (0..eig.dim()).map(|j| block.lift(eig.vector(j))).collect();
    let gap = eig.values[1] - eig.values[0];
    Ok(SpectralResult {
        parity,
        charges,
        near_degenerate: gap < NEAR_DEGENERACY_TOL * params.e_c,
        energies: eig.values,
        states,
        gap,
    })
}

/// Ground state of a parity block without the rest of the spectrum.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub gap: f64,
    pub state: Vec<Complex64>,
}

/// Bisection + inverse iteration; the workhorse for path following.
pub fn lowest_state(params: &CircuitParams, point: ControlPoint, charges: &[i64]) -> Result<GroundState> {
    check_point(point)?;
    let block = GaugedBlock::at(params, point, charges);
    let ev = tridiag::lowest_eigenvalues(&block.diag, &block.off, 2);
    let gap = ev[1] - ev[0];
    if gap < NEAR_DEGENERACY_TOL * params.e_c {
        return Err(Error::NearDegenerate {
            phi: point.phi,
            q: point.q,
            gap,
            threshold: NEAR_DEGENERACY_TOL * params.e_c,
        });
    }
    let v = tridiag::eigenvector(&block.diag, &block.off, ev[0])?;
    Ok(GroundState { energy: ev[0], gap, state: block.lift(&v) })
}

/// Lowest eigenvalue of a parity block only.
pub fn ground_energy(params: &CircuitParams, point: ControlPoint, charges: &[i64]) -> f64 {
    let block = GaugedBlock::at(params, point, charges);
    tridiag::lowest_eigenvalues(&block.diag, &block.off, 1)[0]
}

/// Two charge states nearest the computational state, written as
/// `H = h₀·1 + bₓσˣ + b_yσʸ + b_zσᶻ`.
///
/// Odd parity uses the ordered basis `(|+1⟩, |-1⟩)`, even parity `(|0⟩, |2⟩)`.
/// The transverse field is `-½E₂eff (cos 2Φ̃, ±sin 2Φ̃)`; the longitudinal one is
/// the exact charging-energy splitting, `b_z = -2QE_C` (odd) and
/// `b_z = -2(1 - Q)E_C` (even).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoLevel {
    pub parity: Parity,
    pub charges: [i64; 2],
    pub h0: f64,
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
    /// Inside the window `|Φ - π/2| ≤ e_C` where the two-state truncation holds.
    pub valid: bool,
}

impl TwoLevel {
    pub fn field(&self) -> f64 {
        (self.bx * self.bx + self.by * self.by + self.bz * self.bz).sqrt()
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        let b = self.field();
        [self.h0 - b, self.h0 + b]
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.h0 + self.bz, 0.0), Complex64::new(self.bx, -self.by)],
            [Complex64::new(self.bx, self.by), Complex64::new(self.h0 - self.bz, 0.0)],
        ]
    }
}

pub fn effective_two_level(params: &CircuitParams, point: ControlPoint, parity: Parity) -> TwoLevel {
    let charges = match parity {
        Parity::Odd => [1, -1],
        Parity::Even => [0, 2],
    };
    let e = |n: i64| params.e_c * (n as f64 - point.q).powi(2);
    let (e0, e1) = (e(charges[0]), e(charges[1]));
    // ⟨first|H|second⟩ = bₓ - i b_y
    let upper = match parity {
        // ⟨+1|H|-1⟩ = -(E₂eff/2) e^{-2iΦ̃}
        Parity::Odd => -0.5 * coupling(params, point.phi).conj(),
        // ⟨0|H|2⟩ = -(E₂eff/2) e^{+2iΦ̃}
        Parity::Even => -0.5 * coupling(params, point.phi),
    };
    TwoLevel {
        parity,
        charges,
        h0: 0.5 * (e0 + e1),
        bx: upper.re,
        by: -upper.im,
        bz: 0.5 * (e0 - e1),
        valid: (point.phi - FRAC_PI_2).abs() <= params.e_c_dimless(),
    }
}

/// Bloch angles `(ξ, θ)` of the odd-sector ground spinor
/// `(e^{-iξ/2} cos θ/2, e^{iξ/2} sin θ/2)` in the `(|+1⟩, |-1⟩)` basis.
///
/// `ξ = 2Φ̃` and `θ = atan2(E₂eff/2, 2QE_C) ∈ [0, π]`, so `Q > 0` tilts the
/// spinor towards `|+1⟩`.
pub fn spinor_angles(params: &CircuitParams, point: ControlPoint) -> Result<(f64, f64)> {
    let tl = effective_two_level(params, point, Parity::Odd);
    let transverse = (tl.bx * tl.bx + tl.by * tl.by).sqrt();
    if transverse <= ROUNDOFF * params.e_sigma() && tl.bz.abs() <= ROUNDOFF * params.e_c {
        return Err(Error::Undefined { what: "spinor direction", phi: point.phi, q: point.q });
    }
    // ξ = 2Φ̃ is just the argument of the complex coupling.
    let xi = coupling(params, point.phi).arg();
    let theta = transverse.atan2(-tl.bz);
    Ok((xi, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn unit(e2: f64, e2p: f64) -> CircuitParams {
        CircuitParams::new(e2, e2p, 0.05).unwrap()
    }

    #[test]
    fn effective_josephson_values() {
        assert!((effective_josephson(&unit(1.0, 1.0), 0.0) - 2.0).abs() < 1e-15);
        assert!(effective_josephson(&unit(1.0, 1.0), FRAC_PI_2).abs() < 1e-15);
        assert!((effective_josephson(&unit(1.05, 0.95), FRAC_PI_2) - 0.1).abs() < 1e-14);
    }

    #[test]
    fn effective_josephson_matches_closed_form() {
        let p = unit(1.3, 0.6);
        for k in 0..50 {
            let phi = -3.0 + 0.13 * k as f64;
            let want = (1.3f64.powi(2) + 0.6f64.powi(2) + 2.0 * 1.3 * 0.6 * (2.0 * phi).cos()).sqrt();
            assert!((effective_josephson(&p, phi) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn phase_offset_values() {
        assert_eq!(phase_offset(&unit(1.2, 0.7), 0.0).unwrap(), 0.0);
        assert!((phase_offset(&unit(1.05, 0.95), FRAC_PI_2).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(matches!(phase_offset(&unit(1.0, 1.0), FRAC_PI_2), Err(Error::Undefined { .. })));
    }

    #[test]
    fn phase_offset_reproduces_josephson_expansion() {
        let p = unit(1.1, 0.8);
        for k in 0..20 {
            let phi = 0.3 * k as f64;
            let pt = phase_offset(&p, phi).unwrap();
            let ee = effective_josephson(&p, phi);
            for j in 0..7 {
                let x = 0.9 * j as f64;
                let direct = -1.1 * (2.0 * x - phi).cos() - 0.8 * (2.0 * x + phi).cos();
                let reduced = -ee * (2.0 * x - 2.0 * pt).cos();
                assert!((direct - reduced).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn phase_offset_sweep_is_continuous_and_steepens_with_smaller_delta() {
        let phis: Vec<f64> = (0..=2000).map(|k| PI * k as f64 / 2000.0).collect();
        let slope_at_half = |delta: f64| {
            let p = CircuitParams::new(0.5 * (1.0 + delta), 0.5 * (1.0 - delta), 0.05).unwrap();
            let s = phase_offset_sweep(&p, &phis).unwrap();
            for w in s.windows(2) {
                assert!((w[1] - w[0]).abs() < 0.1);
            }
            let d: Vec<f64> = s.windows(2).map(|w| (w[1] - w[0]) / (phis[1] - phis[0])).collect();
            let imax = d.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            (d[1000], phis[imax])
        };
        let (s1, at1) = slope_at_half(0.01);
        let (s5, at5) = slope_at_half(0.05);
        assert!(s1 > 4.0 * s5);
        assert!((at1 - FRAC_PI_2).abs() < 2e-3 && (at5 - FRAC_PI_2).abs() < 2e-3);
    }

    #[test]
    fn hamiltonian_structure() {
        let basis = ChargeBasis::new(6).unwrap();
        let h = build_hamiltonian(&unit(1.1, 0.9), ControlPoint::new(0.7, 0.3), basis);
        assert_eq!(h, h.adjoint());
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                if (i + j) % 2 == 1 {
                    assert_eq!(h[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
        let h = build_sector_hamiltonian(&unit(0.5, 0.5), ControlPoint::new(0.0, 0.0), Parity::Even, basis);
        assert!(h.iter().all(|z| z.im == 0.0));
        assert!((h[(1, 0)].re + 0.5).abs() < 1e-15);
        let h = build_sector_hamiltonian(&unit(0.5, 0.5), ControlPoint::new(FRAC_PI_2, 0.2), Parity::Odd, basis);
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                if i != j {
                    assert!(h[(i, j)].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn diagonal_limit_odd_sector() {
        let p = unit(0.5, 0.5);
        let r =
            ground_state(&p, ControlPoint::new(FRAC_PI_2, 0.1), Parity::Odd, ChargeBasis::new(10).unwrap()).unwrap();
        assert!((r.energies[0] - 0.05 * 0.81).abs() < 1e-12);
        assert!((r.energies[1] - 0.05 * 1.21).abs() < 1e-12);
        let k = r.charges.iter().position(|&n| n == 1).unwrap();
        assert!((r.states[0][k].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_level_matches_block_and_pauli_form() {
        let p = CircuitParams::from_ratios(1.0, 0.1, 0.5).unwrap();
        let pt = ControlPoint::new(1.6, 0.0);
        let tl = effective_two_level(&p, pt, Parity::Odd);
        let ev = tl.eigenvalues();
        let ee = effective_josephson(&p, 1.6);
        assert!((ev[0] - tl.h0 + 0.5 * ee).abs() < 1e-14);
        assert!((ev[1] - tl.h0 - 0.5 * ee).abs() < 1e-14);
        // Same entries as the (+1, -1) corner of the full Hamiltonian.
        let h = build_hamiltonian(&p, ControlPoint::new(1.6, 0.3), ChargeBasis::new(3).unwrap());
        let m = effective_two_level(&p, ControlPoint::new(1.6, 0.3), Parity::Odd).matrix();
        assert!((m[0][1] - h[(4, 2)]).norm() < 1e-15);
        assert!((m[0][0] - h[(4, 4)]).norm() < 1e-15);
        let m = effective_two_level(&p, ControlPoint::new(1.6, 0.3), Parity::Even).matrix();
        assert!((m[0][1] - h[(3, 5)]).norm() < 1e-15);
        assert!((m[1][1] - h[(5, 5)]).norm() < 1e-15);
    }

    #[test]
    fn spinor_angles_basics() {
        let p = CircuitParams::from_ratios(1.0, 0.1, 0.3).unwrap();
        let (xi, _) = spinor_angles(&p, ControlPoint::new(0.0, 0.2)).unwrap();
        assert_eq!(xi, 0.0);
        let (_, theta) = spinor_angles(&p, ControlPoint::new(1.0, 0.0)).unwrap();
        assert!((theta - FRAC_PI_2).abs() < 1e-15);
        let sym = unit(0.5, 0.5);
        assert!(spinor_angles(&sym, ControlPoint::new(FRAC_PI_2, 0.0)).is_err());
    }
}
