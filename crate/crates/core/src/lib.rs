//! Security-value bounds for General Lotto games in which player Y may send
//! resources to a single contest (or, generalized, to exactly `K` contests).
//!
//! - [`instance`]: game instances, simplex vectors, pure payoff, classic value
//! - [`bounds`]: lower bound by level equalization, upper bound by top-k search
//! - [`strategy`]: constructive strategy families, best responses, Monte Carlo
//! - [`multi`]: feasible-point bounds for the `K`-contest generalization
//! - [`oracle`]: discretized game solved by fictitious play
//! - [`sweep`]: budget sweeps and CSV rows

pub mod bounds;
pub mod envelope;
pub mod error;
pub mod instance;
pub mod multi;
pub mod nelder_mead;
pub mod oracle;
pub mod strategy;
pub mod sweep;

pub use bounds::{bounds_report, solve_lower_bound, solve_upper_bound, BoundsReport};
pub use error::{LottoError, Result};
pub use instance::{
    gl_equilibrium_value, payoff_pure, Allocation, GameInstance, InstanceFile, NormalizeMode, SimplexVector,
};
pub use multi::{multi_report, MultiReport};
pub use oracle::{fictitious_play, solve_oracle, DiscreteGame, OracleResult, YGrid};
pub use strategy::{simulate, SimulationReport};
pub use sweep::{sweep, SweepRow, YRange};
