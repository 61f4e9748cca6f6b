//! ±1 observables M_x = E^x_0 − E^x_1 and the Bell functionals written in
//! their normalized traces m_x = (1/d)tr M_x, m_xy = (1/d)tr(M_x M_y).

use serde::{Deserialize, Serialize};

use super::pvm::{correlation_me, trace_product, CMatrix, PvmFamily};
use super::QuantumError;
use crate::polytope::{bell_values, w_coordinates, BellFunctional, BellReport};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableTraces {
    pub m_x: Vec<f64>,
    pub m_xy: Vec<Vec<f64>>,
}

fn observables(pvms: &PvmFamily) -> Result<Vec<CMatrix>, QuantumError> {
    if pvms.m() != 2 {
        return Err(QuantumError::OutcomeCountNotTwo(pvms.m()));
    }
    Ok((0..pvms.n()).map(|x| pvms.get(x, 0) - pvms.get(x, 1)).collect())
}

pub fn observable_traces(pvms: &PvmFamily) -> Result<ObservableTraces, QuantumError> {
    let obs = observables(pvms)?;
    let scale = 1.0 / pvms.d() as f64;
    let m_x = obs.iter().map(|m| m.trace().re * scale).collect();
    let m_xy = obs.iter().map(|a| obs.iter().map(|b| trace_product(a, b).re * scale).collect()).collect();
    Ok(ObservableTraces { m_x, m_xy })
}

/// (J0, J1, J2, J3) from m01, m02, m12.
pub fn bell_from_traces(t: &ObservableTraces, tol: f64) -> Result<BellReport<f64>, QuantumError> {
    if t.m_x.len() != 3 {
        return Err(QuantumError::InputCountNotThree(t.m_x.len()));
    }
    let (a, b, c) = (t.m_xy[0][1], t.m_xy[0][2], t.m_xy[1][2]);
    let slack0 = (1.0 + a + b + c) / 4.0;
    Ok(BellReport::from_values(
        [1.0 - slack0, (1.0 - a - b + c) / 4.0, (1.0 - a + b - c) / 4.0, (1.0 + a - b - c) / 4.0],
        tol,
    ))
}

/// Signs (s0, s1, s2) of the square (s0 M0 + s1 M1 + s2 M2)².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignPattern {
    /// + + +, certifies 1 − J0.
    PlusPlusPlus,
    /// − + +, certifies J1.
    MinusPlusPlus,
    /// + − +, certifies J2.
    PlusMinusPlus,
    /// + + −, certifies J3.
    PlusPlusMinus,
}

impl SignPattern {
    pub const ALL: [SignPattern; 4] = [Self::PlusPlusPlus, Self::MinusPlusPlus, Self::PlusMinusPlus, Self::PlusPlusMinus];

    pub fn signs(self) -> [f64; 3] {
        match self {
            Self::PlusPlusPlus => [1.0, 1.0, 1.0],
            Self::MinusPlusPlus => [-1.0, 1.0, 1.0],
            Self::PlusMinusPlus => [1.0, -1.0, 1.0],
            Self::PlusPlusMinus => [1.0, 1.0, -1.0],
        }
    }

    pub fn functional(self) -> BellFunctional {
        BellFunctional::ALL[self as usize]
    }

    pub fn for_functional(j: BellFunctional) -> Self {
        Self::ALL[j.index()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TsirelsonCertificate {
    pub pattern: SignPattern,
    pub functional: BellFunctional,
    /// (1/(8d))·tr(S²) − 1/8.
    pub value: f64,
    /// Slack of the functional computed from the correlation table.
    pub slack: f64,
    pub residual: f64,
}

pub fn tsirelson_certificate(pvms: &PvmFamily, pattern: SignPattern, tol: f64) -> Result<TsirelsonCertificate, QuantumError> {
    if pvms.n() != 3 {
        return Err(QuantumError::InputCountNotThree(pvms.n()));
    }
    let obs = observables(pvms)?;
    let d = pvms.d();
    let mut s = CMatrix::zeros(d, d);
    for (m, sign) in obs.iter().zip(pattern.signs()) {
        s += m * num_complex::Complex64::new(sign, 0.0);
    }
    let value = trace_product(&s, &s).re / (8.0 * d as f64) - 0.125;
    let p = correlation_me(pvms, tol)?;
    let w = w_coordinates(&p).expect("3x2 shape");
    let functional = pattern.functional();
    let slack = *bell_values(&w, tol).slack(functional);
    let residual = (value - slack).abs();
    if residual > tol {
        return Err(QuantumError::CertificateMismatch { dev: residual });
    }
    Ok(TsirelsonCertificate { pattern, functional, value, slack, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p0_family() -> PvmFamily {
        let h = 3f64.sqrt() / 2.0;
        PvmFamily::from_kets(&[vec![c(0.0), c(1.0)], vec![c(h), c(0.5)], vec![c(h), c(-0.5)]], 1e-12).unwrap()
    }

    #[test]
    fn p0_traces_are_minus_half() {
        let t = observable_traces(&p0_family()).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert!((t.m_xy[a][b] + 0.5).abs() < 1e-14);
        }
        for x in 0..3 {
            assert!((t.m_xy[x][x] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn trace_formulas_on_fixed_values() {
        let mk = |v: f64| ObservableTraces { m_x: vec![0.0; 3], m_xy: vec![vec![v; 3]; 3] };
        let r = bell_from_traces(&mk(-0.5), 1e-12).unwrap();
        assert!((r.slacks[0] + 0.125).abs() < 1e-15);
        let r = bell_from_traces(&mk(1.0), 1e-12).unwrap();
        assert_eq!(r.slacks, [1.0, 0.0, 0.0, 0.0]);
        let r = bell_from_traces(&mk(0.0), 1e-12).unwrap();
        assert_eq!(r.slacks, [0.25; 4]);
    }

    #[test]
    fn pauli_observables_are_orthogonal() {
        let z = vec![ket_z(0), ket_z(1)];
        let s = 0.5f64.sqrt();
        let xfam = PvmFamily::from_kets(&[vec![c(s), c(-s)]], 1e-12).unwrap();
        let fam = PvmFamily::validate(vec![z, xfam.family(0).to_vec()], 1e-12).unwrap();
        let t = observable_traces(&fam).unwrap();
        assert!(t.m_xy[0][1].abs() < 1e-15);
    }

    fn ket_z(k: usize) -> CMatrix {
        let mut v = vec![c(0.0); 2];
        v[k] = c(1.0);
        super::super::pvm::ket_projector(&v)
    }

    #[test]
    fn certificates_on_p0_and_identical_pvms() {
        let cert = tsirelson_certificate(&p0_family(), SignPattern::PlusPlusPlus, 1e-12).unwrap();
        assert!((cert.value + 0.125).abs() < 1e-14);
        let same = PvmFamily::from_kets(&vec![vec![c(1.0), c(0.0)]; 3], 1e-12).unwrap();
        let cert = tsirelson_certificate(&same, SignPattern::PlusPlusPlus, 1e-12).unwrap();
        assert!((cert.value - 1.0).abs() < 1e-14);
    }
}
