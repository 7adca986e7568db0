//! Traces, dichotomy counts, shattering, VC-dimension search, growth curves,
//! and the VC-density fit.

mod count;
mod density;
mod growth;
pub mod lp;
mod points;
mod shatter;
mod trace;

pub use count::{
    count_dichotomies_arrangement, count_dichotomies_exact_ltf, count_dichotomies_sampled, ltf_traces,
    ltf_traces_arrangement, sample_traces, LtfCaps,
};
pub use density::{estimate_vc_density, fit_line, DensityEstimate, FitPolicy};
pub use growth::{
    binomial, count_dichotomies, estimate_growth, growth_function_oracle, power_of_two, sauer_shelah_cap, Exactness,
    GrowthCount, GrowthEstimate, GrowthMethod, GrowthSample, PointSetPolicy,
};
pub use points::{for_each_combination, PointSet};
pub use shatter::{is_shattered, vc_dim_bruteforce, Certainty, ShatterOptions, ShatterResult, VcDimEstimate, VcSearch};
pub use trace::{trace, Trace};
