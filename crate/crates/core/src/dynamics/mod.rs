//! Evolution of the canonical Weyl-symbol means `(Q1, Q2, Π1, Π2)`.
//!
//! The equations of motion generated by
//! `H = α²Q² + β²Π² + γ(Π1 Q2 − Π2 Q1)` are
//!
//! ```text
//! Q̇_i = 2β² Π_i − γ ε_ji Q_j
//! Π̇_i = −2α² Q_i − γ ε_ji Π_j
//! ```
//!
//! They are solved in closed form by [`evolve_closed`] and independently by
//! the fixed-step integrator in [`integrate`].

mod energy;
mod integrate;

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::frequencies::Frequencies;
use crate::sw::{levi_civita, PhasePoint};

pub use energy::{
    beat_energy, beat_energy_from_state, sector_energy_closed, sector_energy_direct,
    sector_energy_linearized, sector_energy_scaled, sector_energy_special, sector_power,
    sector_power_linearized, EnergyPair,
};
pub use integrate::{
    integrate_oracle, integrate_samples, Integration, StepWarning, MAX_STEP_PHASE,
};

/// Phase-space state in canonical variables. Also used for its time
/// derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State4 {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl State4 {
    pub const ZERO: State4 = State4 {
        q1: 0.0,
        q2: 0.0,
        p1: 0.0,
        p2: 0.0,
    };

    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        Self { q1, q2, p1, p2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q1, self.q2, self.p1, self.p2]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Max-norm distance.
    pub fn distance(&self, other: &State4) -> f64 {
        (*self - *other)
            .to_array()
            .iter()
            .fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn q(&self) -> [f64; 2] {
        [self.q1, self.q2]
    }

    pub fn p(&self) -> [f64; 2] {
        [self.p1, self.p2]
    }
}

impl Add for State4 {
    type Output = State4;

    fn add(self, rhs: State4) -> State4 {
        State4::new(
            self.q1 + rhs.q1,
            self.q2 + rhs.q2,
            self.p1 + rhs.p1,
            self.p2 + rhs.p2,
        )
    }
}

impl Sub for State4 {
    type Output = State4;

    fn sub(self, rhs: State4) -> State4 {
        State4::new(
            self.q1 - rhs.q1,
            self.q2 - rhs.q2,
            self.p1 - rhs.p1,
            self.p2 - rhs.p2,
        )
    }
}

impl Mul<f64> for State4 {
    type Output = State4;

    fn mul(self, c: f64) -> State4 {
        State4::new(c * self.q1, c * self.q2, c * self.p1, c * self.p2)
    }
}

impl From<State4> for PhasePoint {
    fn from(s: State4) -> PhasePoint {
        PhasePoint::new(s.q(), s.p())
    }
}

impl From<PhasePoint> for State4 {
    fn from(x: PhasePoint) -> State4 {
        State4::new(x.q[0], x.q[1], x.p[0], x.p[1])
    }
}

/// Which coordinate pair `(q_i, p_i)` an energy refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    One,
    Two,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::One, Sector::Two];

    pub fn index(self) -> usize {
        match self {
            Sector::One => 1,
            Sector::Two => 2,
        }
    }

    /// `(−1)^i`.
    pub fn parity(self) -> f64 {
        match self {
            Sector::One => -1.0,
            Sector::Two => 1.0,
        }
    }
}

/// The free amplitudes `(x, y, π_x, π_y)` of the closed-form solution; they
/// are the state at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InitialAmplitudes {
    pub x: f64,
    pub y: f64,
    pub pix: f64,
    pub piy: f64,
}

impl InitialAmplitudes {
    pub fn new(x: f64, y: f64, pix: f64, piy: f64) -> Self {
        Self { x, y, pix, piy }
    }

    /// `x = y = √(βħ/2α)`, `π_x = π_y = √(αħ/2β)`.
    pub fn canonical(f: &Frequencies) -> Self {
        Self::canonical_scaled(f, 1.0, 1.0)
    }

    /// Canonical amplitudes with positions scaled by `s` and momenta by `k`.
    pub fn canonical_scaled(f: &Frequencies, s: f64, k: f64) -> Self {
        let hbar = f.hbar();
        let length = (f.beta * hbar / (2.0 * f.alpha)).sqrt();
        let momentum = (f.alpha * hbar / (2.0 * f.beta)).sqrt();
        Self::new(s * length, s * length, k * momentum, k * momentum)
    }

    pub fn to_state(self) -> State4 {
        State4::new(self.x, self.y, self.pix, self.piy)
    }
}

impl From<State4> for InitialAmplitudes {
    fn from(s: State4) -> Self {
        Self::new(s.q1, s.q2, s.p1, s.p2)
    }
}

/// Right-hand side of the canonical equations of motion.
pub fn eom_rhs(f: &Frequencies, s: &State4) -> State4 {
    let two_a2 = 2.0 * f.alpha * f.alpha;
    let two_b2 = 2.0 * f.beta * f.beta;
    // ε_ji v_j = −(ε v)_i
    let eq = levi_civita(s.q());
    let ep = levi_civita(s.p());
    State4::new(
        two_b2 * s.p1 + f.gamma * eq[0],
        two_b2 * s.p2 + f.gamma * eq[1],
        -two_a2 * s.q1 + f.gamma * ep[0],
        -two_a2 * s.q2 + f.gamma * ep[1],
    )
}

/// Closed-form solution: a rotation at γ composed with an oscillation at Ω.
pub fn evolve_closed(f: &Frequencies, ic: &InitialAmplitudes, t: f64) -> State4 {
    let (so, co) = (f.carrier * t).sin_cos();
    let (sg, cg) = (f.gamma * t).sin_cos();
    let b_a = f.beta / f.alpha;
    let a_b = f.alpha / f.beta;
    let InitialAmplitudes { x, y, pix, piy } = *ic;
    State4 {
        q1: x * co * cg + y * co * sg + b_a * (piy * so * sg + pix * so * cg),
        q2: y * co * cg - x * co * sg - b_a * (pix * so * sg - piy * so * cg),
        p1: pix * co * cg + piy * co * sg - a_b * (y * so * sg + x * so * cg),
        p2: piy * co * cg - pix * co * sg + a_b * (x * so * sg - y * so * cg),
    }
}

/// The two conserved quadratic forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    /// `Σ (α/β) Q_i² + (β/α) Π_i²`.
    pub energy_like: f64,
    /// `Σ ε_ij Q_i Π_j = Q1 Π2 − Q2 Π1`.
    pub action_like: f64,
}

pub fn invariants(f: &Frequencies, s: &State4) -> Invariants {
    let a_b = f.alpha / f.beta;
    let b_a = f.beta / f.alpha;
    Invariants {
        energy_like: a_b * (s.q1 * s.q1 + s.q2 * s.q2) + b_a * (s.p1 * s.p1 + s.p2 * s.p2),
        action_like: s.q1 * s.p2 - s.q2 * s.p1,
    }
}
