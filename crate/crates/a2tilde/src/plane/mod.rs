pub mod incidence;
pub mod perm;
pub mod projectivity;

pub use incidence::{check_axioms, find_isomorphism, pg2, pg2_of_order, AxiomReport, Flag, IncidencePlane};
pub use projectivity::{
    combinatorial_projection, nontriv_configurations, nontriv_fixed_point_check, opposite, pencil, perspectivity_chain,
    projectivity_group, transitivity_report, NonTrivConfig, ProjectivityGroup, TransitivityReport, Vertex,
};
