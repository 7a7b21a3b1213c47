//! Scalar arithmetic in exact, float and complex modes, together with
//! q-numbers, Pochhammer symbols and terminating (basic) hypergeometric sums.

mod scalar;
mod series;
pub(crate) mod special;

pub use scalar::{Complex64, Mode, Scalar};
pub use series::{hyp_series, ConjugatePair, SeriesParams};
pub use special::{factorial, pochhammer, q_bracket, q_num, q_pochhammer, q_pochhammer_multi};
