//! Exact univariate algebra over ℚ in the variable `q`.

mod cyclo;
mod gcd;
mod poly;
mod ratfunc;
mod series;

pub use cyclo::{
    cyclotomic, cyclotomic_multiplicity, cyclotomic_valuation, expand, log_derivative, necklace,
    ramanujan_log_form, resultant, tensor_product,
};
pub use poly::PolynomialQ;
pub use ratfunc::RationalFunctionQ;
pub use series::PowerSeriesQ;
