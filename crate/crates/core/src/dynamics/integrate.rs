//! Classical fourth-order Runge-Kutta on the canonical equations of motion.
//! Serves as the independent check of the closed-form solution.

use serde::Serialize;

use super::{eom_rhs, State4};
use crate::frequencies::Frequencies;

/// Largest carrier phase `Ω·h` per step before a [`StepWarning`] is raised.
pub const MAX_STEP_PHASE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepWarning {
    pub phase_per_step: f64,
    pub steps: usize,
}

impl std::fmt::Display for StepWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "StepCountTooSmall: carrier phase per step {:.3} exceeds {MAX_STEP_PHASE} with {} steps",
            self.phase_per_step, self.steps
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integration {
    pub state: State4,
    pub warning: Option<StepWarning>,
}

#[inline]
fn rk4_step(f: &Frequencies, s: State4, h: f64) -> State4 {
    let k1 = eom_rhs(f, &s);
    let k2 = eom_rhs(f, &(s + k1 * (0.5 * h)));
    let k3 = eom_rhs(f, &(s + k2 * (0.5 * h)));
    let k4 = eom_rhs(f, &(s + k3 * h));
    s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

fn check_steps(f: &Frequencies, span: f64, steps: usize) -> Option<StepWarning> {
    let phase_per_step = f.carrier * span.abs() / steps as f64;
    (phase_per_step > MAX_STEP_PHASE).then_some(StepWarning {
        phase_per_step,
        steps,
    })
}

/// Integrates from `s0` at time 0 to time `t` in `steps` equal steps
/// (at least one).
pub fn integrate_oracle(f: &Frequencies, s0: &State4, t: f64, steps: usize) -> Integration {
    let steps = steps.max(1);
    let h = t / steps as f64;
    let state = (0..steps).fold(*s0, |s, _| rk4_step(f, s, h));
    Integration {
        state,
        warning: check_steps(f, t, steps),
    }
}

/// States at each of the ascending `times`, starting from `s0` at time 0.
/// The step length is `max|t| / steps`; each gap between samples is covered
/// by a whole number of steps no longer than that.
pub fn integrate_samples(
    f: &Frequencies,
    s0: &State4,
    times: &[f64],
    steps: usize,
) -> (Vec<State4>, Option<StepWarning>) {
    let steps = steps.max(1);
    let span = times.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let h_max = if span > 0.0 { span / steps as f64 } else { 1.0 };
    let mut out = Vec::with_capacity(times.len());
    let mut s = *s0;
    let mut now = 0.0;
    for &t in times {
        let gap = t - now;
        let n = (gap.abs() / h_max).ceil() as usize;
        if n > 0 {
            let h = gap / n as f64;
            for _ in 0..n {
                s = rk4_step(f, s, h);
            }
        }
        now = t;
        out.push(s);
    }
    (out, check_steps(f, span, steps))
}
