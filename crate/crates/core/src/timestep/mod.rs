//! Method-of-lines time integration: presets, step control, RK4 and diagnostics.

mod scenario;
mod simulate;
mod stepper;

pub use scenario::{random_smooth_state, Preset, PresetParams, Scenario, DEFAULT_CFL};
pub use simulate::{simulate, Abort, Diagnostics, Snapshot, Trajectory};
pub use stepper::{stable_dt, step, StepLimit};
