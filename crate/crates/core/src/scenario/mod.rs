//! JSON scenarios: a curve, a sheaf, the requested outputs and optional
//! expectations, evaluated into a deterministic report.

mod eval;
mod input;
mod text;

pub use eval::{
    evaluate, oracle_checks, run_suite, run_text, Check, ClassOut, Options, RandomOut, Report, Results,
};
pub use input::{
    build_class, build_curve, build_element, build_group, build_sheaf, build_subgroup, Expect, RandomSuite, Scenario,
    OUTPUTS,
};
pub use text::render_text;

/// JSON Schema for scenario documents.
pub const SCHEMA: &str = include_str!("schema.json");

/// Scenarios shipped with the library, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("hyperelliptic_g2", include_str!("../../scenarios/hyperelliptic_g2.json")),
    ("hyperelliptic_g3", include_str!("../../scenarios/hyperelliptic_g3.json")),
    ("hyperelliptic_g4", include_str!("../../scenarios/hyperelliptic_g4.json")),
    ("p5_smooth", include_str!("../../scenarios/p5_smooth.json")),
    ("p5_nodal", include_str!("../../scenarios/p5_nodal.json")),
    ("etale_nonfree", include_str!("../../scenarios/etale_nonfree.json")),
    ("pathology_trivial_component", include_str!("../../scenarios/pathology_trivial_component.json")),
    ("pathology_irreducible", include_str!("../../scenarios/pathology_irreducible.json")),
    ("cycle_of_lines", include_str!("../../scenarios/cycle_of_lines.json")),
    ("theta_graph", include_str!("../../scenarios/theta_graph.json")),
    ("free_action_random", include_str!("../../scenarios/free_action_random.json")),
];

/// Text of a bundled scenario.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
