//! Machine-readable run reports and visual export.
//!
//! JSON (via [`RunReport`]) is the single machine-readable output
//! format; it is schema-versioned and round-trips losslessly. DOT
//! output ([`export_dot`]) is for visualisation only. Graph6 encoding
//! and decoding live on [`Graph`](crate::graphs::Graph) itself.

use serde::{Deserialize, Serialize};

use crate::bicayley::{BiCayley, BiCayleyDescriptor};
use crate::classify::{
    analyze_action, s_arc_transitive, two_arc_conditions, EdgeTransitivity, Report,
};
use crate::graphs::Graph;
use crate::Result;

/// Version of the [`RunReport`] JSON schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Where the analysed object came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Human-readable origin: a family name with its parameters, a
    /// file name, or `stdin`.
    pub source: String,
    /// The group datum, when the input was one (absent for plain
    /// graph6 input).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<BiCayleyDescriptor>,
    /// graph6 form of the analysed graph.
    pub graph6: String,
}

/// Summary of the normaliser of the translation group inside the full
/// automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormaliserSummary {
    /// Number of copy-preserving maps `σ_{α,g}` fixing the vertex `1₀`.
    pub sigma_count: usize,
    /// Number of copy-swapping maps `δ_{α,x,y}`.
    pub delta_count: usize,
    /// Order of the normaliser (as a string: it can exceed exact JSON
    /// number range).
    pub order: String,
    /// Number of orbits of the normaliser on the edges.
    pub edge_orbits: usize,
    /// Position of the normaliser's action on the edge-transitivity
    /// spectrum.
    pub action: EdgeTransitivity,
}

/// Symmetry facts computable from a bare graph (no group datum):
/// what `classify` reports when the input is plain graph6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub worthy: bool,
    pub aut_order: String,
    pub aut_action: EdgeTransitivity,
    pub vertex_transitive: bool,
    pub aut_two_arc_transitive: bool,
    pub edge_regular: bool,
}

/// Boolean form of the three 2-arc-transitivity conditions on a
/// matching-free normalised datum, with the prediction they combine to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoArcSummary {
    /// Some automorphism maps `S` onto `S⁻¹`.
    pub inverting_automorphism: bool,
    /// The setwise stabiliser of `S ∖ {1}` in the automorphism group is
    /// transitive on it.
    pub stabiliser_transitive_on_s: bool,
    /// Some `x ∈ S ∖ {1}` and automorphism `α` give `S⁻¹S ∖ {1} ⊆`
    /// the `α`-shifted set required by the third condition.
    pub shift_witness: bool,
    /// All three conditions hold: the normaliser is predicted
    /// 2-arc-transitive.
    pub predicted_two_arc_transitive: bool,
    /// What the normaliser's action actually does on 2-arcs.
    pub observed_two_arc_transitive: bool,
}

/// Versioned, machine-readable result of one CLI run. Omitted optional
/// sections deserialise back to `None`, so serialisation round-trips.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub provenance: Provenance,
    /// Full symmetry report (the `classify` subcommand).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    /// Graph-only symmetry report (`classify` on bare graph6 input).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_report: Option<GraphSummary>,
    /// Normaliser summary (the `normaliser` subcommand, and `classify`
    /// when the input is a group datum).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normaliser: Option<NormaliserSummary>,
    /// The 2-arc-transitivity condition triple (`normaliser`
    /// subcommand, matching-free normalised data only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_arc: Option<TwoArcSummary>,
    /// Wall-clock milliseconds. Present only when timing was requested,
    /// keeping default output byte-stable across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    /// An empty report shell for the given source.
    pub fn new(provenance: Provenance) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            provenance,
            report: None,
            graph_report: None,
            normaliser: None,
            two_arc: None,
            timing_ms: None,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RunReport> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Builds the normaliser summary of a datum (computes the normaliser
/// and its edge orbits).
pub fn normaliser_summary(b: &BiCayley) -> Result<NormaliserSummary> {
    let graph = b.graph();
    let nrm = b.normaliser()?;
    let analysis = analyze_action(&graph, &nrm.group);
    Ok(NormaliserSummary {
        sigma_count: nrm.sigma.len(),
        delta_count: nrm.delta.len(),
        order: nrm.group.order().to_string(),
        edge_orbits: analysis.edge_orbits,
        action: crate::classify::edge_transitivity_type(&graph, &nrm.group),
    })
}

/// Computes the graph-only symmetry summary (full automorphism group
/// and its actions, but nothing that needs a group datum).
pub fn graph_summary(graph: &Graph) -> GraphSummary {
    let aut = graph.automorphism_group();
    let analysis = analyze_action(graph, &aut);
    GraphSummary {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        valency: graph.regular_valency(),
        connected: graph.is_connected(),
        bipartite: graph.bipartition().is_some(),
        girth: graph.girth(),
        diameter: graph.diameter(),
        worthy: graph.is_worthy(),
        aut_order: aut.order().to_string(),
        aut_action: crate::classify::edge_transitivity_type(graph, &aut),
        vertex_transitive: analysis.vertex_transitive,
        aut_two_arc_transitive: s_arc_transitive(graph, &aut, 2),
        edge_regular: analysis.edge_regular,
    }
}

/// Evaluates the 2-arc condition triple against the normaliser's actual
/// action. `Err(NotApplicable)` for matched or non-normalised data,
/// like the underlying conditions.
pub fn two_arc_summary(b: &BiCayley) -> Result<TwoArcSummary> {
    let conds = two_arc_conditions(b)?;
    let graph = b.graph();
    let nrm = b.normaliser()?;
    Ok(TwoArcSummary {
        inverting_automorphism: conds.inverting_automorphism.is_some(),
        stabiliser_transitive_on_s: conds.stabiliser_transitive_on_s,
        shift_witness: conds.shift_witness.is_some(),
        predicted_two_arc_transitive: conds.predicted_two_arc_transitive,
        observed_two_arc_transitive: s_arc_transitive(&graph, &nrm.group, 2),
    })
}

/// Vertex labels for a bi-Cayley graph: the group element's word form
/// with the copy annotated as a subscript, `word₀` for vertices in the
/// first copy of the group and `word₁` in the second.
pub fn bicayley_labels(b: &BiCayley) -> Vec<String> {
    let gr = b.group();
    let n = gr.order();
    let mut labels = Vec::with_capacity(2 * n);
    for part in 0..2 {
        let sub = if part == 0 { '₀' } else { '₁' };
        for h in 0..n {
            labels.push(format!("{}{}", gr.name(h), sub));
        }
    }
    labels
}

/// Renders the graph in DOT format. With `labels`, vertex `v` is shown
/// as `labels[v]` (the slice must cover every vertex); without, plain
/// indices are used. Output is deterministic: vertices and edges in
/// index order.
pub fn export_dot(graph: &Graph, labels: Option<&[String]>) -> String {
    let n = graph.vertex_count();
    if let Some(ls) = labels {
        assert!(ls.len() >= n, "need a label for each of the {n} vertices");
    }
    let mut out = String::from("graph {\n");
    for v in 0..n {
        match labels {
            Some(ls) => out.push_str(&format!(
                "  {v} [label=\"{}\"];\n",
                ls[v].replace('\\', "\\\\").replace('"', "\\\"")
            )),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for (u, v) in graph.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
