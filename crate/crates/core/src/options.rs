use crate::exec::Execution;

/// Degree bound handed to minimal-polynomial reconstruction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreeBound {
    /// `min(|I|, |J|)`.
    #[default]
    Tight,
    /// `|I|`, the number of pure stationary strategies of player 1.
    RowProfiles,
}

/// Which exponent defines the small discount factor `λ_r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdMode {
    /// `10|I|²n² bit(N) r`.
    Simple,
    /// `|I|n bit(n) + |I|n bit(N) + |I| bit(|I|) + 2 bit(|I|n+1) + rn|I| + 1`.
    #[default]
    Tight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub exec: Execution,
    pub degree: DegreeBound,
    pub threshold: ThresholdMode,
    /// Fail with [`crate::Error::BoundViolation`] when an entry of `W`
    /// exceeds the a-priori bit-size bound.
    pub audit: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            exec: Execution::default(),
            degree: DegreeBound::default(),
            threshold: ThresholdMode::default(),
            audit: true,
        }
    }
}
