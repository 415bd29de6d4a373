//! Linear Seiberg-Witten map between the deformed variables `(q, p)` and the
//! canonical variables `(Q, Π)`.
//!
//! The map used here is
//!
//! ```text
//! q_i = λ Q_i − (θ / 2λħ) ε_ij Π_j
//! p_i = μ Π_i + (η / 2μħ) ε_ij Q_j
//! ```
//!
//! with the Levi-Civita convention `ε_12 = +1`, `ε_21 = −1` used throughout the
//! crate. Only the product `λμ` is fixed by the algebra,
//! `λμ(1 − λμ) = θη / 4ħ²`; the split between λ and μ is a gauge choice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ValidatedParams;

/// Tolerance for the algebra constraints (Frobenius norm, scaled by the
/// magnitude of the target matrix when that exceeds one).
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// 2×2 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    /// The 2-dim Levi-Civita symbol with `ε_12 = +1`.
    pub const LEVI_CIVITA: Mat2 = Mat2([[0.0, 1.0], [-1.0, 0.0]]);

    pub fn scaled(self, c: f64) -> Mat2 {
        let [[a, b], [c_, d]] = self.0;
        Mat2([[c * a, c * b], [c * c_, c * d]])
    }

    pub fn transpose(self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2([[a, c], [b, d]])
    }

    pub fn frobenius(self) -> f64 {
        self.0.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn apply(self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for (row, rrow) in out.iter_mut().zip(rhs.0) {
            for (v, r) in row.iter_mut().zip(rrow) {
                *v -= r;
            }
        }
        Mat2(out)
    }
}

/// `ε v`, i.e. `(ε_ij v_j)_i = (v_2, −v_1)`.
#[inline]
pub(crate) fn levi_civita(v: [f64; 2]) -> [f64; 2] {
    [v[1], -v[0]]
}

/// A phase-space point: either the deformed `(q, p)` or the canonical
/// `(Q, Π)` variables, depending on context.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PhasePoint {
    pub q: [f64; 2],
    pub p: [f64; 2],
}

impl PhasePoint {
    pub fn new(q: [f64; 2], p: [f64; 2]) -> Self {
        Self { q, p }
    }

    pub fn is_finite(&self) -> bool {
        self.q.iter().chain(&self.p).all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &PhasePoint) -> f64 {
        self.q
            .iter()
            .chain(&self.p)
            .zip(other.q.iter().chain(&other.p))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Root of `u(1 − u) = θη/4ħ²` that tends to 1 in the commutative limit.
pub fn lambda_mu_product(params: &ValidatedParams) -> f64 {
    0.5 * (1.0 + (1.0 - params.deformation()).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SWMap {
    pub lambda: f64,
    pub mu: f64,
    pub params: ValidatedParams,
}

/// Builds the map for `params`, splitting `λμ` as `λ = r·√u`, `μ = √u / r`
/// with `r = gauge_ratio`.
pub fn solve_sw(params: ValidatedParams, gauge_ratio: f64) -> Result<SWMap> {
    if !(gauge_ratio.is_finite() && gauge_ratio > 0.0) {
        return Err(Error::InvalidGauge(gauge_ratio));
    }
    let root = lambda_mu_product(&params).sqrt();
    Ok(SWMap {
        lambda: gauge_ratio * root,
        mu: root / gauge_ratio,
        params,
    })
}

impl SWMap {
    /// Default gauge `λ = μ`.
    pub fn new(params: ValidatedParams) -> Self {
        solve_sw(params, 1.0).expect("unit gauge ratio is valid")
    }

    /// A map with arbitrary `λ`, `μ`, bypassing the constraint solve.
    /// Useful to probe [`constraint_residuals`].
    pub fn from_parts_unchecked(lambda: f64, mu: f64, params: ValidatedParams) -> Self {
        Self { lambda, mu, params }
    }

    pub fn product(&self) -> f64 {
        self.lambda * self.mu
    }

    /// `|λμ(1 − λμ) − θη/4ħ²|` divided by 1/4, the largest value the left
    /// side can take.
    pub fn product_residual(&self) -> f64 {
        let u = self.product();
        4.0 * (u * (1.0 - u) - 0.25 * self.params.deformation()).abs()
    }

    /// The blocks `(A, B, C, D)` of `q = AQ + BΠ`, `p = CQ + DΠ`.
    pub fn blocks(&self) -> [Mat2; 4] {
        let hbar = self.params.hbar();
        let eps = Mat2::LEVI_CIVITA;
        [
            Mat2::IDENTITY.scaled(self.lambda),
            eps.scaled(-self.params.theta() / (2.0 * self.lambda * hbar)),
            eps.scaled(self.params.eta() / (2.0 * self.mu * hbar)),
            Mat2::IDENTITY.scaled(self.mu),
        ]
    }

    pub fn forward(&self, canonical: &PhasePoint) -> PhasePoint {
        sw_forward(self, canonical)
    }

    pub fn inverse(&self, nc: &PhasePoint) -> Result<PhasePoint> {
        sw_inverse(self, nc)
    }
}

/// `(Q, Π) → (q, p)`.
pub fn sw_forward(sw: &SWMap, canonical: &PhasePoint) -> PhasePoint {
    let hbar = sw.params.hbar();
    let b = sw.params.theta() / (2.0 * sw.lambda * hbar);
    let c = sw.params.eta() / (2.0 * sw.mu * hbar);
    let e_pi = levi_civita(canonical.p);
    let e_q = levi_civita(canonical.q);
    PhasePoint {
        q: [
            sw.lambda * canonical.q[0] - b * e_pi[0],
            sw.lambda * canonical.q[1] - b * e_pi[1],
        ],
        p: [
            sw.mu * canonical.p[0] + c * e_q[0],
            sw.mu * canonical.p[1] + c * e_q[1],
        ],
    }
}

/// `(q, p) → (Q, Π)`.
pub fn sw_inverse(sw: &SWMap, nc: &PhasePoint) -> Result<PhasePoint> {
    let one_minus = 1.0 - sw.params.deformation();
    if one_minus <= 0.0 {
        let hbar_sq = sw.params.hbar() * sw.params.hbar();
        return Err(Error::DegenerateDeformation {
            theta_eta: sw.params.theta() * sw.params.eta(),
            hbar_sq,
        });
    }
    let norm = one_minus.sqrt().recip();
    let lm_hbar = 2.0 * sw.lambda * sw.mu * sw.params.hbar();
    let b = sw.params.theta() / lm_hbar;
    let c = sw.params.eta() / lm_hbar;
    let e_p = levi_civita(nc.p);
    let e_q = levi_civita(nc.q);
    let sq = sw.mu * norm;
    let sp = sw.lambda * norm;
    Ok(PhasePoint {
        q: [sq * (nc.q[0] + b * e_p[0]), sq * (nc.q[1] + b * e_p[1])],
        p: [sp * (nc.p[0] - c * e_q[0]), sp * (nc.p[1] - c * e_q[1])],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub label: &'static str,
    pub norm: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Frobenius-norm residuals of the three algebra constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub residuals: [Residual; 3],
}

impl ConstraintReport {
    pub fn all_pass(&self) -> bool {
        self.residuals.iter().all(|r| r.pass)
    }

    pub fn max_norm(&self) -> f64 {
        self.residuals.iter().map(|r| r.norm).fold(0.0, f64::max)
    }
}

/// Evaluates `ADᵀ − BCᵀ − I`, `ABᵀ − BAᵀ − Θ/ħ` and `CDᵀ − DCᵀ − N/ħ`.
pub fn constraint_residuals(sw: &SWMap) -> ConstraintReport {
    let [a, b, c, d] = sw.blocks();
    let hbar = sw.params.hbar();
    let eps = Mat2::LEVI_CIVITA;
    let theta_over_hbar = eps.scaled(sw.params.theta() / hbar);
    let eta_over_hbar = eps.scaled(sw.params.eta() / hbar);

    let entry = |label, lhs: Mat2, target: Mat2| {
        let norm = (lhs - target).frobenius();
        let tolerance = CONSTRAINT_TOL * target.frobenius().max(1.0);
        Residual {
            label,
            norm,
            tolerance,
            pass: norm <= tolerance,
        }
    };

    ConstraintReport {
        residuals: [
            entry(
                "AD^T - BC^T = I",
                a * d.transpose() - b * c.transpose(),
                Mat2::IDENTITY,
            ),
            entry(
                "AB^T - BA^T = Theta/hbar",
                a * b.transpose() - b * a.transpose(),
                theta_over_hbar,
            ),
            entry(
                "CD^T - DC^T = N/hbar",
                c * d.transpose() - d * c.transpose(),
                eta_over_hbar,
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::NCParams;

    fn params(theta: f64, eta: f64) -> ValidatedParams {
        NCParams::new(1.0, 1.0, 1.0, theta, eta).validate().unwrap()
    }

    #[test]
    fn commutative_root_is_one() {
        let sw = solve_sw(params(0.0, 0.0), 1.0).unwrap();
        assert_eq!(sw.product(), 1.0);
        assert_eq!(sw.lambda, 1.0);
        assert_eq!(sw.mu, 1.0);
    }

    #[test]
    fn small_deformation_root() {
        let sw = solve_sw(params(0.1, 0.1), 1.0).unwrap();
        let u = sw.product();
        // (1 + sqrt(0.99)) / 2
        assert!((u - 0.997_493_718_553_31).abs() < 1e-15, "{u}");
        assert!((u * (1.0 - u) - 0.01 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn gauge_split_preserves_product() {
        let sw = solve_sw(params(0.0, 0.0), 2.0).unwrap();
        assert_eq!(sw.lambda, 2.0);
        assert_eq!(sw.mu, 0.5);
        assert_eq!(sw.product(), 1.0);
    }

    #[test]
    fn bad_gauge_is_rejected() {
        for g in [0.0, -1.0, f64::INFINITY, f64::NAN] {
            assert!(solve_sw(params(0.1, 0.1), g).is_err());
        }
    }

    #[test]
    fn root_is_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 0..100 {
            let r = k as f64 / 100.0;
            let u = lambda_mu_product(&NCParams::new(1.0, 1.0, 1.0, r, 1.0).validate().unwrap());
            assert!(u < prev);
            assert!(u > 0.5 && u <= 1.0);
            prev = u;
        }
    }

    #[test]
    fn forward_identity_in_commutative_limit() {
        let sw = SWMap::new(params(0.0, 0.0));
        let x = PhasePoint::new([0.3, -1.1], [2.0, 0.25]);
        assert_eq!(sw_forward(&sw, &x), x);
        assert_eq!(sw_inverse(&sw, &x).unwrap(), x);
    }

    #[test]
    fn forward_sign_convention() {
        // θ = 0.2, η = 0 gives λ = μ = 1; ε_12 = +1 puts Π_1 into q_2.
        let sw = SWMap::new(params(0.2, 0.0));
        assert_eq!(sw.lambda, 1.0);
        let out = sw_forward(&sw, &PhasePoint::new([0.0, 0.0], [1.0, 0.0]));
        assert_eq!(out.q, [0.0, 0.1]);
        assert_eq!(out.p, [1.0, 0.0]);
    }

    #[test]
    fn inverse_of_origin_is_origin() {
        let sw = solve_sw(params(0.4, 0.7), 1.3).unwrap();
        assert_eq!(
            sw_inverse(&sw, &PhasePoint::default()).unwrap(),
            PhasePoint::default()
        );
    }

    #[test]
    fn residuals_vanish_exactly_in_commutative_limit() {
        let report = constraint_residuals(&SWMap::new(params(0.0, 0.0)));
        for r in report.residuals {
            assert_eq!(r.norm, 0.0, "{}", r.label);
        }
    }

    #[test]
    fn perturbed_product_fails_first_constraint() {
        let p = params(0.0, 0.0);
        let sw = SWMap::from_parts_unchecked(1.0 + 1e-3, 1.0, p);
        let report = constraint_residuals(&sw);
        assert!(!report.all_pass());
        let first = report.residuals[0];
        // diag(1e-3, 1e-3) has Frobenius norm √2·1e-3
        assert!((first.norm - 2f64.sqrt() * 1e-3).abs() < 1e-12);
        assert!(!first.pass);
        assert!(report.residuals[1].pass && report.residuals[2].pass);
    }

    #[test]
    fn blocks_match_forward_map() {
        let sw = solve_sw(params(0.3, -0.6), 0.7).unwrap();
        let [a, b, c, d] = sw.blocks();
        let x = PhasePoint::new([0.4, -0.9], [1.3, 0.2]);
        let qa = a.apply(x.q);
        let qb = b.apply(x.p);
        let pc = c.apply(x.q);
        let pd = d.apply(x.p);
        let y = sw_forward(&sw, &x);
        for i in 0..2 {
            assert!((y.q[i] - qa[i] - qb[i]).abs() < 1e-15);
            assert!((y.p[i] - pc[i] - pd[i]).abs() < 1e-15);
        }
    }
}
