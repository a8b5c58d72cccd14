//! Exact q-series machinery for curve counting on K3 surfaces.
//!
//! * [`series`]: truncated Laurent series over rationals and `y`-Laurent
//!   polynomials, bivariate `(u, q)` series, and the `y = -e^{iu}` substitution.
//! * [`modforms`]: Bernoulli numbers, Eisenstein series, the discriminant in
//!   one and two variables, and the quasimodular ring `Q[E2, E4, E6]`.
//! * [`kkv`]: BPS and Hodge tables, stable-pairs Euler characteristics, point
//!   insertions on both sides, and the Gromov-Witten/pairs comparison.
//! * [`vertex`]: box configurations of the 1-leg stable pairs vertex and the
//!   constant-term negativity audit.
//! * [`lowgenus`]: the genus `<= 3` boundary computations as series identities.

pub mod kkv;
pub mod lowgenus;
pub mod modforms;
pub mod par;
pub mod series;
pub mod vertex;
