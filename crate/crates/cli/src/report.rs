use std::collections::BTreeMap;
use std::fmt::Write as _;

use qsigma_core::cartan::Weight;
use qsigma_core::claims::Claim;
use qsigma_core::linalg::QqMatrix;
use qsigma_core::scalar::LaurentFraction;
use qsigma_core::sigma::{Eigenspace, LowestWeightSummary};
use qsigma_core::tangent::LowestWeightVector;
use qsigma_core::tangent::TangentSpace;
use serde::Serialize;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub series: String,
    pub rank: usize,
    /// 1-based.
    pub node: usize,
    pub specialize: Vec<String>,
}

impl ConfigEcho {
    pub fn from_config(cfg: &RunConfig) -> Self {
        Self {
            series: cfg.cartan.series.to_string(),
            rank: cfg.cartan.rank,
            node: cfg.node + 1,
            specialize: cfg.points.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub index: usize,
    pub word: String,
    pub weight: Weight,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub value: LaurentFraction,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionEntry {
    pub generator: String,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockEntry {
    pub weight: Weight,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaEntry {
    /// Dimension of `T ⊗ T`; index `i * tangent_dim + j` is `b_i ⊗ b_j`.
    pub dim: usize,
    pub blocks: Vec<BlockEntry>,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Coordinate {
    pub index: usize,
    pub label: String,
    pub coeff: LaurentFraction,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationVector {
    pub rendered: String,
    pub coords: Vec<Coordinate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LowestWeightEntry {
    pub weight: Weight,
    pub vector: String,
    pub coords: Vec<Coordinate>,
    /// `null` when the vector is not a sigma eigenvector.
    pub eigenvalue: Option<LaurentFraction>,
}

impl LowestWeightEntry {
    pub fn new(t: &TangentSpace, v: &LowestWeightVector, summary: &LowestWeightSummary) -> Self {
        debug_assert_eq!(v.weight, summary.weight);
        Self {
            weight: v.weight.clone(),
            vector: summary.vector.clone(),
            coords: coordinates(t, &v.coords),
            eigenvalue: summary.eigenvalue.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationsEntry {
    pub dim: usize,
    pub classical_dim: usize,
    pub vectors: Vec<RelationVector>,
}

/// Top-level report shared by every subcommand. Sections a command does not
/// compute are omitted from the JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub tangent_dim: usize,
    pub basis: Vec<BasisEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<ActionEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lowest_weight_vectors: Option<Vec<LowestWeightEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<Eigenspace>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minus_one_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_torsion_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ex_ex_sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<LaurentFraction>,
    pub discrepancy_notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<Claim>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(command: &'static str, cfg: &RunConfig, t: &TangentSpace) -> Self {
        let basis = t
            .basis()
            .iter()
            .enumerate()
            .map(|(index, b)| BasisEntry { index, word: b.label(), weight: b.weight.clone() })
            .collect();
        let mut discrepancy_notes = Vec::new();
        if t.levi().is_empty() {
            discrepancy_notes.push("the Levi subalgebra is trivial, so every vector of T ⊗ T is lowest weight".to_string());
        }
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            command,
            config: ConfigEcho::from_config(cfg),
            tangent_dim: t.dim(),
            basis,
            actions: None,
            sigma: None,
            lowest_weight_vectors: None,
            spectrum: None,
            minus_one_dim: None,
            classical_dim: None,
            strongly_torsion_free: None,
            relations: None,
            ex_ex_sign: None,
            nu: None,
            discrepancy_notes,
            claims: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let label = if c.series.starts_with('E') { c.series.clone() } else { format!("{}{}", c.series, c.rank) };
        let _ = writeln!(out, "{} {} x={} (qsigma {})", self.command, label, c.node, self.tool_version);
        let _ = writeln!(out, "tangent dim: {}", self.tangent_dim);
        let _ = writeln!(out, "basis:");
        for b in &self.basis {
            let _ = writeln!(out, "  [{}] {}  weight {}", b.index, b.word, fmt_weight(&b.weight));
        }
        if let Some(actions) = &self.actions {
            let _ = writeln!(out, "actions:");
            for a in actions {
                let _ = writeln!(out, "  {}:", a.generator);
                for e in &a.entries {
                    let _ = writeln!(out, "    b{} -> {} · b{}", e.col, e.value, e.row);
                }
            }
        }
        if let Some(s) = &self.sigma {
            let _ = writeln!(out, "sigma on T ⊗ T: dim {}, {} weight blocks, {} nonzero entries", s.dim, s.blocks.len(), s.entries.len());
            for e in &s.entries {
                let _ = writeln!(out, "  [{}, {}] = {}", e.row, e.col, e.value);
            }
        }
        if let Some(lw) = &self.lowest_weight_vectors {
            let _ = writeln!(out, "lowest weight vectors:");
            for v in lw {
                let ev = v.eigenvalue.as_ref().map_or("not an eigenvector".to_string(), |e| e.to_string());
                let _ = writeln!(out, "  weight {}: {}  eigenvalue {}", fmt_weight(&v.weight), v.vector, ev);
            }
        }
        if let Some(sp) = &self.spectrum {
            let _ = writeln!(out, "spectrum:");
            for e in sp {
                let pts: Vec<String> = e.specialized.iter().map(|s| format!("q={}: {}", s.q, s.kernel_dim)).collect();
                let _ = writeln!(out, "  {}  multiplicity {}  ({})", e.eigenvalue, e.multiplicity, pts.join(", "));
            }
        }
        if let (Some(m), Some(cl)) = (self.minus_one_dim, self.classical_dim) {
            let _ = writeln!(out, "dim ker(sigma + 1) = {m}, classical dim = {cl}");
        }
        if let Some(stf) = self.strongly_torsion_free {
            let _ = writeln!(out, "strongly torsion free: {stf}");
        }
        if let Some(r) = &self.relations {
            let _ = writeln!(out, "relations: {} (classical {})", r.dim, r.classical_dim);
            for v in &r.vectors {
                let _ = writeln!(out, "  {}", v.rendered);
            }
        }
        if let Some(s) = self.ex_ex_sign {
            let _ = writeln!(out, "E_x ⊗ E_x sign: {s}");
        }
        if let Some(nu) = &self.nu {
            let _ = writeln!(out, "nu = {nu}");
        }
        if let Some(claims) = &self.claims {
            let _ = writeln!(out, "claims:");
            for cl in claims {
                let tag = if cl.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {tag} {}: {}", cl.id, cl.detail);
            }
        }
        if !self.discrepancy_notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for n in &self.discrepancy_notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        if let Some(t) = &self.timing_ms {
            let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
            let _ = writeln!(out, "timing: {}", parts.join(", "));
        }
        out
    }
}

fn fmt_weight(w: &Weight) -> String {
    let parts: Vec<String> = w.0.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn sparse_entries(m: &QqMatrix) -> Vec<MatrixEntry> {
    let mut out = Vec::new();
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            let v = m.get(row, col);
            if !v.is_zero() {
                out.push(MatrixEntry { row, col, value: v.clone() });
            }
        }
    }
    out
}

fn coordinates(t: &TangentSpace, v: &[LaurentFraction]) -> Vec<Coordinate> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(index, c)| Coordinate { index, label: t.tensor_label(index), coeff: c.clone() })
        .collect()
}

pub fn relation_vector(t: &TangentSpace, v: &[LaurentFraction]) -> RelationVector {
    RelationVector { rendered: t.render_tensor(v), coords: coordinates(t, v) }
}
