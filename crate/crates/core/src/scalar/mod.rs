//! Exact arithmetic: F_q, F_q[x], F_q[θ][t], F_q(θ) and the standard quantities.

mod bipoly;
mod field;
mod parse;
mod poly;
mod quantities;
mod ratfunc;

pub use bipoly::{binomial_mod_p, BiPoly};
pub use field::{prime_power, Field, MAX_FIELD_SIZE};
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::{qpow, Poly, Var};
pub use quantities::{
    base_q_digits, bracket, bracket_d, bracket_l, bracket_l_degree, carlitz_gamma,
    carlitz_gamma_degree,
};
pub use ratfunc::RatFunc;

