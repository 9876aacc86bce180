//! Built-in verification suite: the toric facts the engine is expected to
//! reproduce, as ready-made scenarios. Each check carries a short anchor
//! string naming the fact it verifies.

use serde_json::{json, Value};

use crate::report::Report;
use crate::scenario::{run_scenario, BuilderSpec, Check, Scenario, Source};

fn check(id: &str, op: &str, path: &str, expected: Value, anchor: &str) -> Check {
    Check {
        id: id.to_string(),
        op: op.to_string(),
        args: Value::Null,
        path: if path.is_empty() { None } else { Some(path.to_string()) },
        expected,
        anchor: if anchor.is_empty() { None } else { Some(anchor.to_string()) },
    }
}

fn check_args(id: &str, op: &str, args: Value, path: &str, expected: Value, anchor: &str) -> Check {
    Check { args, ..check(id, op, path, expected, anchor) }
}

fn relation_source(positive: &[u64], negative: &[u64]) -> Source {
    Source::Relation {
        positive: positive.iter().map(|&w| (None, w)).collect(),
        negative: negative.iter().map(|&w| (None, w)).collect(),
        ambient_rank: None,
    }
}

fn quotient_source(order: u64, weights: &[u64]) -> Source {
    Source::Quotient { order, weights: weights.to_vec() }
}

fn node_germ_fan() -> Source {
    Source::ExplicitFan {
        ambient_rank: 3,
        rays: [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect(),
        max_cones: vec![vec![0, 1, 2, 3]],
    }
}

fn quadric_node_fan() -> Source {
    Source::ExplicitFan {
        ambient_rank: 3,
        rays: [
            [0, 0, 1],
            [1, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
            [-1, -1, -2],
        ]
        .iter()
        .map(|r| r.iter().map(|&x| x.into()).collect())
        .collect(),
        max_cones: vec![
            vec![0, 1, 2, 3],
            vec![0, 1, 4],
            vec![0, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ],
    }
}

fn scenario(name: &str, tags: &[&str], source: Source, checks: Vec<Check>) -> Scenario {
    Scenario {
        name: name.to_string(),
        tags: tags.iter().map(|t| t.to_string()).collect(),
        source,
        checks,
    }
}

/// Every scenario of the built-in suite.
pub fn paper_scenarios() -> Vec<Scenario> {
    vec![
        scenario(
            "flip-wps5",
            &["flips"],
            relation_source(&[1, 1, 2], &[1, 1, 1]),
            vec![
                check("type", "analyze_flip", "/type", json!("Flipping"),
                    "the relation e1+e2+2e3 = e4+e5+e6 defines a flipping contraction"),
                check("x-locus", "analyze_flip", "/x_locus/label", json!("P(1,1,2)"),
                    "the contracted surface is P(1,1,2)"),
                check("y-locus", "analyze_flip", "/y_locus/label", json!("P(1,1,1)"),
                    "the flip replaces it with a plane"),
                check("x-terminal", "analyze_flip", "/x_class/class", json!("Terminal"),
                    "the contracting side is terminal"),
                check("y-smooth", "analyze_flip", "/y_class/class", json!("Smooth"),
                    "the flipped side is smooth"),
                check("k-degree", "analyze_flip", "/k_degree", json!(1),
                    "the contracted curve class has anticanonical degree +1"),
                check("x-multiplicities", "analyze_flip", "/x_cone_multiplicities",
                    json!([1, 1, 2]),
                    "one chart is the quotient of A^5 by +-1"),
                check("certificate", "analyze_flip", "/certificate_found", json!(true),
                    "a divisor is nef on the flipped side, negative on the other"),
            ],
        ),
        scenario(
            "flip-p1-p3",
            &["flips"],
            relation_source(&[1, 4], &[1, 1, 1, 1]),
            vec![
                check("type", "analyze_flip", "/type", json!("Flipping"),
                    "the relation e1+4e2 = e3+e4+e5+e6 defines a flipping contraction"),
                check("x-raw", "analyze_flip", "/x_locus/raw_weights", json!([1, 4]),
                    "the contracted curve carries coordinate weights (1,4)"),
                check("x-locus", "analyze_flip", "/x_locus/label", json!("P(1,1)"),
                    "well-formed, the contracted curve is a line"),
                check("x-dim", "analyze_flip", "/x_locus/dim", json!(1), ""),
                check("y-locus", "analyze_flip", "/y_locus/label", json!("P(1,1,1,1)"),
                    "the flip inserts a P^3"),
                check("y-dim", "analyze_flip", "/y_locus/dim", json!(3), ""),
                check("x-terminal", "analyze_flip", "/x_class/class", json!("Terminal"),
                    "the contracting side is terminal"),
                check("y-smooth", "analyze_flip", "/y_class/class", json!("Smooth"), ""),
                check("k-degree", "analyze_flip", "/k_degree", json!(1),
                    "anticanonical degree +1 on the contracted curve"),
                check("x-multiplicities", "analyze_flip", "/x_cone_multiplicities",
                    json!([1, 4]),
                    "one chart is the index-4 quotient with weights (1,1,1,1,3)"),
                check("certificate", "analyze_flip", "/certificate_found", json!(true), ""),
            ],
        ),
        scenario(
            "flip-conifold",
            &["flips"],
            relation_source(&[1, 1], &[1, 1]),
            vec![
                check("k-degree", "analyze_flip", "/k_degree", json!(0),
                    "the small resolutions of the node flop: K-degree zero"),
                check("x-smooth", "analyze_flip", "/x_class/class", json!("Smooth"), ""),
                check("y-smooth", "analyze_flip", "/y_class/class", json!("Smooth"), ""),
            ],
        ),
        scenario(
            "node-germ",
            &["node"],
            node_germ_fan(),
            vec![
                check("terminal", "classify", "/class", json!("Terminal"),
                    "the 3-fold node is terminal"),
                check("gorenstein", "classify", "/gorenstein_index", json!(1),
                    "the node is Gorenstein"),
                check("not-qfactorial", "classify", "/q_factorial", json!(false),
                    "the node cone is not simplicial"),
                check_args("ray-divisor", "cartier_test",
                    json!({ "divisor": [1, 0, 0, 0] }), "/result", json!("NotQCartier"),
                    "a single ruling divisor through the node is not Q-Cartier"),
            ],
        ),
        scenario(
            "quadric-node-threefold",
            &["node", "class-groups", "rigidity"],
            quadric_node_fan(),
            vec![
                check("cl", "class_group", "/free_rank", json!(2),
                    "the nodal quadric 3-fold has class group Z^2"),
                check("cl-torsion", "class_group", "/torsion", json!([]), ""),
                check("pic", "picard_group", "/free_rank", json!(1),
                    "its Picard rank is 1: Weil and Cartier differ at the node"),
                check("smooth-codim2", "regularity_profile", "/smooth_in_codim/1", json!(true),
                    "smooth in codimension 2"),
                check("not-qfact-codim3", "regularity_profile", "/qfactorial_in_codim/2",
                    json!(false), "not Q-factorial in codimension 3"),
                check("terminal", "classify", "/class", json!("Terminal"), ""),
            ],
        ),
        scenario(
            "surface-node-wps112",
            &["class-groups", "rigidity"],
            Source::Builder(BuilderSpec::WeightedProjective { weights: vec![1, 1, 2] }),
            vec![
                check("cl", "class_group", "/group", json!("Z"),
                    "the quadric cone surface has class group Z"),
                check("ray-classes", "class_group", "/ray_classes", json!([
                    { "free": [1], "torsion": [] },
                    { "free": [1], "torsion": [] },
                    { "free": [2], "torsion": [] },
                ]), "ray divisors have classes equal to the weights"),
                check("singular-codim2", "regularity_profile", "/smooth_in_codim/1",
                    json!(false), "singular already in codimension 2"),
                check("qfactorial", "regularity_profile", "/qfactorial_in_codim/1",
                    json!(true), "Q-factorial: the fan is simplicial"),
                check("canonical", "classify", "/class", json!("Canonical"),
                    "the A1 point is canonical, not terminal"),
                check("gorenstein", "classify", "/gorenstein_index", json!(1), ""),
                check("fano", "fano_status", "/status", json!("Fano"), ""),
                check("nef-ray", "nef_cone", "/generator_count", json!(1),
                    "Picard rank 1: the nef cone is a single ray"),
            ],
        ),
        scenario(
            "product-p1-p1",
            &["class-groups", "nef-mori"],
            Source::Builder(BuilderSpec::Product {
                factors: vec![
                    BuilderSpec::ProjectiveSpace { n: 1 },
                    BuilderSpec::ProjectiveSpace { n: 1 },
                ],
            }),
            vec![
                check("cl", "class_group", "/free_rank", json!(2),
                    "the smooth quadric surface has class group Z^2"),
                check("mori", "mori_cone", "/extremal_ray_count", json!(2),
                    "two rulings"),
                check("nef", "nef_cone", "/generator_count", json!(2),
                    "the nef cone is the product orthant"),
                check_args("ruling", "positivity", json!({ "divisor": [1, 0, 0, 0] }),
                    "/verdict", json!("NefNotAmple"),
                    "a ruling pullback is nef but trivial on the other ruling"),
                check("fano", "fano_status", "/status", json!("Fano"), ""),
            ],
        ),
        scenario(
            "product-p3-p2",
            &["nef-mori", "rigidity"],
            Source::Builder(BuilderSpec::Product {
                factors: vec![
                    BuilderSpec::ProjectiveSpace { n: 3 },
                    BuilderSpec::ProjectiveSpace { n: 2 },
                ],
            }),
            vec![
                check("rays", "fan_info", "/ray_count", json!(7), ""),
                check("cl", "class_group", "/free_rank", json!(2), ""),
                check("nef", "nef_cone", "/generator_count", json!(2),
                    "nef cone of the product is the product orthant"),
                check("fano", "fano_status", "/status", json!("Fano"), ""),
                check("smooth-codim2", "regularity_profile", "/smooth_in_codim/1",
                    json!(true), "smooth everywhere"),
                check("qfact-codim3", "regularity_profile", "/qfactorial_in_codim/2",
                    json!(true), ""),
            ],
        ),
        scenario(
            "projective-space-p4",
            &["rigidity"],
            Source::Builder(BuilderSpec::ProjectiveSpace { n: 4 }),
            vec![
                check("smooth", "classify", "/class", json!("Smooth"), ""),
                check("smooth-codim2", "regularity_profile", "/smooth_in_codim/1",
                    json!(true), ""),
                check("qfact-codim3", "regularity_profile", "/qfactorial_in_codim/2",
                    json!(true), ""),
                check("fano", "fano_status", "/status", json!("Fano"), ""),
            ],
        ),
        scenario(
            "blowup-line-p4",
            &["nef-mori"],
            Source::Builder(BuilderSpec::BlowupLinearSubspace { n: 4, k: 1 }),
            vec![
                check("rays", "fan_info", "/ray_count", json!(6), ""),
                check("smooth", "classify", "/class", json!("Smooth"), ""),
                check("cl", "class_group", "/free_rank", json!(2), ""),
                check("fano", "fano_status", "/status", json!("Fano"),
                    "the blow-up of P^4 along a line is Fano"),
                check("nef", "nef_cone", "/generator_count", json!(2),
                    "nef cone spanned by the hyperplane class and its strict transform"),
                check("mori", "mori_cone", "/extremal_ray_count", json!(2),
                    "wall classes collapse to two extremal rays"),
            ],
        ),
        scenario(
            "bundle-o3-over-p3",
            &["nef-mori"],
            Source::Builder(BuilderSpec::SplitBundleProjectivization {
                base_dim: 3,
                twists: vec![0, 3],
            }),
            vec![
                check("smooth", "classify", "/class", json!("Smooth"), ""),
                check("cl", "class_group", "/free_rank", json!(2), ""),
                check("fano", "fano_status", "/status", json!("Fano"),
                    "the P1-bundle with twist 3 over P^3 is Fano"),
                check("mori", "mori_cone", "/extremal_ray_count", json!(2),
                    "fiber class and base-section class"),
            ],
        ),
        scenario(
            "hirzebruch-f2",
            &["nef-mori"],
            Source::Builder(BuilderSpec::SplitBundleProjectivization {
                base_dim: 1,
                twists: vec![0, 2],
            }),
            vec![
                check("weak-fano", "fano_status", "/status", json!("WeakFano"),
                    "the twist-2 surface is weak Fano only"),
                check_args("anticanonical", "positivity",
                    json!({ "divisor": [1, 1, 1, 1] }), "/verdict", json!("NefNotAmple"),
                    "the anticanonical divisor meets one wall in degree zero"),
            ],
        ),
        scenario(
            "quotient-half-ones-5",
            &["quotients"],
            quotient_source(2, &[1, 1, 1, 1, 1]),
            vec![
                check("terminal", "reid_tai", "/class", json!("Terminal"),
                    "A^5/(+-1) is terminal: the age of -1 is 5/2"),
                check("not-gorenstein", "reid_tai", "/gorenstein", json!(false),
                    "the weight sum is odd"),
                check("agreement", "quotient_agreement", "/agree", json!(true),
                    "age test and lattice-point test coincide"),
                check("index", "classify", "/gorenstein_index", json!(2), ""),
            ],
        ),
        scenario(
            "quotient-third-ones-4",
            &["quotients"],
            quotient_source(3, &[1, 1, 1, 1]),
            vec![
                check("terminal", "reid_tai", "/class", json!("Terminal"),
                    "A^4/mu_3 with weights (1,1,1,1) is terminal"),
                check("agreement", "quotient_agreement", "/agree", json!(true), ""),
            ],
        ),
        scenario(
            "quotient-quarter-11113",
            &["quotients"],
            quotient_source(4, &[1, 1, 1, 1, 3]),
            vec![
                check("terminal", "reid_tai", "/class", json!("Terminal"),
                    "the mu_4 chart with weights (1,1,1,1,3) is terminal"),
                check("agreement", "quotient_agreement", "/agree", json!(true), ""),
            ],
        ),
        scenario(
            "quotient-a1",
            &["quotients"],
            quotient_source(2, &[1, 1]),
            vec![
                check("canonical", "reid_tai", "/class", json!("Canonical"),
                    "the surface A1 point is canonical, not terminal"),
                check("gorenstein", "reid_tai", "/gorenstein", json!(true), ""),
                check("agreement", "quotient_agreement", "/agree", json!(true), ""),
            ],
        ),
        scenario(
            "wps-1-5-2",
            &["wps"],
            Source::Builder(BuilderSpec::WeightedProjective {
                weights: vec![1, 1, 1, 1, 1, 2],
            }),
            vec![
                check("terminal", "classify", "/class", json!("Terminal"),
                    "P(1^5,2) is terminal"),
                check("index", "classify", "/gorenstein_index", json!(2),
                    "and not Gorenstein"),
                check("cl", "class_group", "/free_rank", json!(1), ""),
            ],
        ),
        scenario(
            "wps-1-3-2-7",
            &["wps"],
            Source::Builder(BuilderSpec::WeightedProjective {
                weights: vec![1, 1, 1, 2, 2, 2, 2, 2, 2, 2],
            }),
            vec![
                check("terminal", "classify", "/class", json!("Terminal"),
                    "P(1^3,2^7) is terminal"),
                check("index", "classify", "/gorenstein_index", json!(2), ""),
            ],
        ),
        scenario(
            "wps-1-4-3",
            &["wps"],
            Source::Builder(BuilderSpec::WeightedProjective {
                weights: vec![1, 1, 1, 1, 3],
            }),
            vec![
                check("terminal", "classify", "/class", json!("Terminal"),
                    "the degenerate fiber P(1^4,3) is terminal"),
                check("fano", "fano_status", "/status", json!("Fano"), ""),
            ],
        ),
        scenario(
            "wps-1-4-3-4",
            &["wps"],
            Source::Builder(BuilderSpec::WeightedProjective {
                weights: vec![1, 1, 1, 1, 3, 4],
            }),
            vec![
                check("terminal", "classify", "/class", json!("Terminal"),
                    "P(1^4,3,4) is terminal: its charts are the 1/3 and 1/4 quotients"),
                check("index", "classify", "/gorenstein_index", json!(12),
                    "local indices 3 and 4 combine to 12"),
                check("cl", "class_group", "/free_rank", json!(1), ""),
            ],
        ),
    ]
}

/// Run the built-in suite, optionally filtered by tag or scenario name.
pub fn paper_suite(filter: Option<&str>) -> Report {
    let mut outcomes = Vec::new();
    for scenario in paper_scenarios() {
        if let Some(f) = filter {
            if scenario.name != f && !scenario.tags.iter().any(|t| t == f) {
                continue;
            }
        }
        outcomes.extend(run_scenario(&scenario).checks);
    }
    let mut report = Report::new("paper-suite", outcomes);
    report.filter = filter.map(str::to_string);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let report = paper_suite(None);
        assert!(report.summary.total > 40);
        for c in &report.checks {
            assert!(
                c.pass,
                "{} / {}: expected {} got {}",
                c.scenario, c.id, c.expected, c.computed
            );
        }
    }

    #[test]
    fn filters_restrict_to_tags() {
        let flips = paper_suite(Some("flips"));
        assert!(flips.summary.total > 0);
        assert!(flips.checks.iter().all(|c| c.scenario.starts_with("flip")));

        let nothing = paper_suite(Some("no-such-tag"));
        assert_eq!(nothing.summary.total, 0);
        assert!(nothing.all_passed());
    }

    #[test]
    fn suite_json_is_byte_identical_across_runs() {
        let a = paper_suite(None).to_json();
        let b = paper_suite(None).to_json();
        assert_eq!(a, b);
    }
}
