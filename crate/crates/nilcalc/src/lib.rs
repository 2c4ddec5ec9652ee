//! Exact-arithmetic toolkit for higher-order Fourier analysis experiments.
//!
//! The crate computes Gowers uniformity norms of functions on integer
//! intervals, constructs and evaluates polynomial sequences and
//! nilcharacters on explicitly-coordinatized filtered nilpotent Lie groups,
//! and checks, in rational arithmetic, the algebraic identities and
//! equidistribution criteria that connect bracket polynomials to
//! nilmanifold orbits.
//!
//! All interior algebra is exact: group elements carry `BigRational`
//! coordinates, torus points are canonical representatives in the
//! fundamental domain `(-1/2, 1/2]`, and phases stay symbolic until the
//! final float rendering.  Floating point appears only in norm
//! accumulation and in smoothing-bump weights.
//!
//! Entry points by topic:
//!
//! * [`scalar`] — rationals, torus points, phase vectors.
//! * [`nilgroup`] — filtered nilpotent groups with lattices; exact
//!   multiplication by commutator collection; a catalog of standard groups.
//! * [`polyseq`] — polynomial sequences in Taylor form, Host-Kra cubes.
//! * [`nilseq`] — nilcharacters, smoothing atlases, the skew-torus lift.
//! * [`bracket`] — bracket polynomial expressions and exact identities.
//! * [`gowers`] — uniformity norms, correlation, the Cauchy-Schwarz
//!   quadruple statistic.
//! * [`equid`] — Weyl sums and the horizontal-character obstruction test.
//! * [`freqreg`] — bounded-height frequency regularization.
//! * [`scenario`] — reproducible experiment runner used by the CLI.
//!
//! The `examples/` directory of the crate holds one runnable program per
//! capability; `nilcalc` is the single thin command-line binary.

pub mod scalar;
pub mod rng;
pub(crate) mod poly;
pub mod nilgroup;
pub mod polyseq;
pub mod nilseq;
pub mod bracket;
pub mod gowers;
pub mod equid;
pub mod freqreg;
pub mod scenario;

pub use scalar::{Rational, TorusPoint, PhaseVector};
