//! Anderson–Thakur polynomials, the series Ω, deformation series and their
//! Frobenius difference systems, and the Carlitz tensor-power t-action.

mod at_poly;
mod deformation;
mod graded;
mod system;
mod tmodule;

pub use at_poly::{at_numerator, AtPolynomials, DEFAULT_AT_LIMIT};
pub use deformation::{
    deformation_series, deformation_value, deformation_value_at, omega_factor_unit,
    prefix_nonvanishing, recursion_check, specialization_frobenius_check,
};
pub use graded::{omega_unit, omega_unit_equation_check, GradedSeries, TSeries};
pub use system::{
    build_block_system, vanishing_order_profile, verify_difference_system, BlockSystem, PhiEntry,
};
pub use tmodule::{carlitz_tensor_t_action, torsion_search, TModulePoint};

/// Agreement through the common precision, which must reach `floor` so that a
/// vanishing difference is not vacuous.
pub(crate) fn graded_agree(a: &GradedSeries, b: &GradedSeries, floor: i64) -> bool {
    let g = a.grade.min(b.grade);
    let (Ok(x), Ok(y)) = (a.regrade(g), b.regrade(g)) else {
        return false;
    };
    x.unit.agrees_with(&y.unit) && x.unit.precision().min(y.unit.precision()) >= floor
}
