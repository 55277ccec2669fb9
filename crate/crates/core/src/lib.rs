//! Threshold and chain graphs built from binary generating codes, with
//! closed-form metric dimension, threshold dimension and L(2,1) labeling
//! span, plus brute-force oracles to check them on small graphs.

pub mod code;
pub mod graph;
pub mod lambda;
pub mod metric;
pub mod oracle;
pub mod report;
pub mod tau;

pub use code::{codes_of_length, codes_up_to, parse_code, Block, CodeError, GeneratingCode};
pub use graph::{build, build_chain, build_threshold, distance_matrix, Family, Graph, GraphError};
pub use lambda::{lambda_chain, lambda_threshold, verify_labeling, ChainPartition, Labeling, LambdaError};
pub use metric::{beta, beta_chain, beta_threshold, BetaResult};
pub use oracle::{exact_lambda, exact_metric_dimension, exact_metric_dimension_by_twins, exact_tau, exact_tau_r, OracleBudget, OracleError};
pub use tau::{tau_code, tau_r_code, tau_r_string, tau_string, TauError, TauRResult, TauResult};
