// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod linalg;
pub mod model;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod specfun;
pub mod sweep;
