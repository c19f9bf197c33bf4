//! Exact-arithmetic toolkit for the linear algebra of proper maps:
//! intersection-form contraction criteria, intersection cohomology stalks
//! on two-stratum germs, perverse truncation, perverse filtrations and
//! Lefschetz-type decompositions, limits of primitive subspaces, and the
//! projectors cutting intersection cohomology out of the cohomology of a
//! threefold resolution.
//!
//! Everything is computed over the rationals (or the rational-function
//! field in one parameter) with no rounding; identical inputs always
//! produce identical outputs.
//!
//! The `examples/` directory of the crate demonstrates each capability;
//! the `perverse-kit` binary runs scenario files and emits verification
//! reports.

pub mod complexes;
pub mod forms;
pub mod germ;
pub mod lefschetz;
pub mod linalg;
pub mod localsys;
pub mod motive;
pub mod samples;
pub mod scenario;

pub use linalg::{
    frac, parse_rational, rat, CancelToken, Definiteness, DefinitenessReport, EpsPoly,
    LinalgError, ParamMatrix, PolyFrac, Rational, RationalMatrix, Signature, Subspace,
};

use std::fmt;

/// Outcome of a single verification: `Pass`/`Fail` judge a theorem's
/// conclusion, `HypothesisNotMet` flags inputs outside the theorem's
/// hypotheses so they are never mistaken for counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
        };
        f.write_str(s)
    }
}
