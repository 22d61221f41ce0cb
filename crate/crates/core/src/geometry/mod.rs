//! Exact geometry of deterministic growth: speeds, `K_{1/w}`, its hull and
//! polar, the contact set `∂K′`, the three-way classification and the box
//! threshold survey. No floating point is used in any decision.

pub mod lambda;
pub mod polygon;
pub mod rational;
pub mod speed;
pub mod star;
pub mod survey;

pub use lambda::{
    distinct_products, lambda_of_line, lambda_star, lambda_star_in, lambda_star_neighboring,
    lambda_star_set,
};
pub use polygon::RationalPolygon;
pub use rational::{RationalPoint, Q};
pub use speed::{critical_directions, speed, speed_vec, Direction, Speed};
pub use star::{
    boundary_point, classify, classify_star, hull_of_neighborhood, k_prime, k_star, wulff_shape,
    Case, CaseLabel, KComponent, KPrimeSet, StarBoundary,
};
pub use survey::{k_family, survey, Survey, SurveyRow, ThresholdFamily, MAX_SURVEY_RANGE};
