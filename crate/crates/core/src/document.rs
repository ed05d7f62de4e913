//! JSON documents holding a network and, optionally, its certificate.
//!
//! ```json
//! {"version": 1, "kind": "skip", "input_dim": 1, "depth": 2, "width": 2,
//!  "domain": [[-1, 1]],
//!  "first_layer": [{"w": [1], "b": 0}, {"w": [-1], "b": 0}],
//!  "hidden_layers": [[{"wx": [0], "wy": [1, 1], "b": 0}, ...]],
//!  "output": {"a0": 0, "a": [0], "beta": [[1, 1], [-0.5, 1]]},
//!  "certificate": {"lemma": "square", "params": {"L": 2}, "bound": 0.0625, "domain": [[-1, 1]]}}
//! ```
//!
//! Standard nets use `"layers": [{"W": [[...]], "b": [...]}]` with
//! `"output": {"w": [...], "b": ...}`; shallow nets use `"units": [{"a", "b", "c"}]`,
//! `"c0"` and `"activation"`. `shifts` and `range_hints` are optional metadata.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::builders::BoundCertificate;
use crate::calculus::{Activation, ShallowNet, ShallowUnit};
use crate::interval::Hyperbox;
use crate::net::{DenseLayer, DenseOutput, Network, RangeHint, SkipNet, SkipOutput, SkipUnit, StandardNet};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported document version {found} (expected {FORMAT_VERSION})")]
    Version { found: String },
    #[error("malformed {kind} document: {message}")]
    Shape { kind: String, message: String },
    #[error("invariant violation: {0}")]
    Invariant(String),
}

/// Any of the three network kinds a document can hold.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyNet {
    Skip(SkipNet),
    Standard(StandardNet),
    Shallow(ShallowNet),
}

impl AnyNet {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyNet::Skip(_) => "skip",
            AnyNet::Standard(_) => "standard",
            AnyNet::Shallow(_) => "shallow",
        }
    }

    pub fn as_network(&self) -> &dyn Network {
        match self {
            AnyNet::Skip(n) => n,
            AnyNet::Standard(n) => n,
            AnyNet::Shallow(n) => n,
        }
    }

    /// Hidden layer count.
    pub fn depth(&self) -> usize {
        match self {
            AnyNet::Skip(n) => n.depth,
            AnyNet::Standard(n) => n.depth(),
            AnyNet::Shallow(_) => 1,
        }
    }

    /// Largest hidden layer width.
    pub fn width(&self) -> usize {
        match self {
            AnyNet::Skip(n) => n.width,
            AnyNet::Standard(n) => n.max_width(),
            AnyNet::Shallow(n) => n.units.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetDocument {
    pub net: AnyNet,
    pub certificate: Option<BoundCertificate>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    version: Value,
    kind: String,
}

#[derive(Serialize, Deserialize)]
struct FirstUnit {
    w: Vec<f64>,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct HiddenUnit {
    wx: Vec<f64>,
    wy: Vec<f64>,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct SkipOut {
    a0: f64,
    a: Vec<f64>,
    beta: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkipDoc {
    version: u64,
    kind: String,
    input_dim: usize,
    depth: usize,
    width: usize,
    domain: Hyperbox,
    first_layer: Vec<FirstUnit>,
    hidden_layers: Vec<Vec<HiddenUnit>>,
    output: SkipOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<BoundCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    shifts: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    range_hints: Vec<RangeHint>,
}

#[derive(Serialize, Deserialize)]
struct DenseDoc {
    #[serde(rename = "W")]
    w: Vec<Vec<f64>>,
    b: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DenseOut {
    w: Vec<f64>,
    b: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StandardDoc {
    version: u64,
    kind: String,
    input_dim: usize,
    depth: usize,
    width: usize,
    domain: Hyperbox,
    layers: Vec<DenseDoc>,
    output: DenseOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<BoundCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    shifts: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ShallowUnitDoc {
    a: Vec<f64>,
    b: f64,
    c: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShallowDoc {
    version: u64,
    kind: String,
    input_dim: usize,
    domain: Hyperbox,
    activation: Activation,
    units: Vec<ShallowUnitDoc>,
    c0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<BoundCertificate>,
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

fn shape(kind: &str, e: serde_json::Error) -> DocumentError {
    DocumentError::Shape { kind: kind.to_string(), message: e.to_string() }
}

impl NetDocument {
    pub fn new(net: AnyNet, certificate: Option<BoundCertificate>) -> Self {
        NetDocument { net, certificate }
    }

    pub fn skip(net: SkipNet, certificate: Option<BoundCertificate>) -> Self {
        Self::new(AnyNet::Skip(net), certificate)
    }

    pub fn to_value(&self) -> Value {
        let certificate = self.certificate.clone();
        let v = match &self.net {
            AnyNet::Skip(n) => serde_json::to_value(SkipDoc {
                version: FORMAT_VERSION,
                kind: "skip".to_string(),
                input_dim: n.input_dim,
                depth: n.depth,
                width: n.width,
                domain: n.domain.clone(),
                first_layer: n
                    .layers
                    .first()
                    .map(|l| l.iter().map(|u| FirstUnit { w: u.wx.clone(), b: u.b }).collect())
                    .unwrap_or_default(),
                hidden_layers: n
                    .layers
                    .iter()
                    .skip(1)
                    .map(|l| l.iter().map(|u| HiddenUnit { wx: u.wx.clone(), wy: u.wy.clone(), b: u.b }).collect())
                    .collect(),
                output: SkipOut { a0: n.output.a0, a: n.output.a.clone(), beta: n.output.beta.clone() },
                certificate,
                shifts: n.shifts.clone(),
                range_hints: n.hints.clone(),
            }),
            AnyNet::Standard(n) => serde_json::to_value(StandardDoc {
                version: FORMAT_VERSION,
                kind: "standard".to_string(),
                input_dim: n.input_dim,
                depth: n.depth(),
                width: n.max_width(),
                domain: n.domain.clone(),
                layers: n.layers.iter().map(|l| DenseDoc { w: l.w.clone(), b: l.b.clone() }).collect(),
                output: DenseOut { w: n.output.w.clone(), b: n.output.b },
                certificate,
                shifts: n.shifts.clone(),
            }),
            AnyNet::Shallow(n) => serde_json::to_value(ShallowDoc {
                version: FORMAT_VERSION,
                kind: "shallow".to_string(),
                input_dim: n.input_dim,
                domain: n.domain.clone(),
                activation: n.activation,
                units: n.units.iter().map(|u| ShallowUnitDoc { a: u.a.clone(), b: u.b, c: u.c }).collect(),
                c0: n.c0,
                certificate,
            }),
        };
        v.expect("network documents serialize to JSON")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values always print")
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            offset: byte_offset(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
        let header: Header = serde_json::from_value(value.clone()).map_err(|e| shape("network", e))?;
        if header.version.as_u64() != Some(FORMAT_VERSION) {
            return Err(DocumentError::Version { found: header.version.to_string() });
        }
        let invariant = |e: crate::Error| DocumentError::Invariant(e.to_string());
        match header.kind.as_str() {
            "skip" => {
                let doc: SkipDoc = serde_json::from_value(value).map_err(|e| shape("skip", e))?;
                let mut layers = Vec::with_capacity(doc.depth);
                if !doc.first_layer.is_empty() || doc.depth > 0 {
                    layers.push(
                        doc.first_layer.into_iter().map(|u| SkipUnit { wx: u.w, wy: Vec::new(), b: u.b }).collect(),
                    );
                }
                layers.extend(
                    doc.hidden_layers
                        .into_iter()
                        .map(|l| l.into_iter().map(|u| SkipUnit { wx: u.wx, wy: u.wy, b: u.b }).collect()),
                );
                let net = SkipNet {
                    input_dim: doc.input_dim,
                    depth: doc.depth,
                    width: doc.width,
                    layers,
                    output: SkipOutput { a0: doc.output.a0, a: doc.output.a, beta: doc.output.beta },
                    domain: doc.domain,
                    shifts: doc.shifts,
                    hints: doc.range_hints,
                }
                .validated()
                .map_err(invariant)?;
                Ok(NetDocument::new(AnyNet::Skip(net), doc.certificate))
            }
            "standard" => {
                let doc: StandardDoc = serde_json::from_value(value).map_err(|e| shape("standard", e))?;
                let net = StandardNet {
                    input_dim: doc.input_dim,
                    layers: doc.layers.into_iter().map(|l| DenseLayer { w: l.w, b: l.b }).collect(),
                    output: DenseOutput { w: doc.output.w, b: doc.output.b },
                    domain: doc.domain,
                    shifts: doc.shifts,
                }
                .validated()
                .map_err(invariant)?;
                if net.depth() != doc.depth || net.max_width() != doc.width {
                    return Err(DocumentError::Invariant(format!(
                        "declared depth {} and width {} do not match the layers ({} and {})",
                        doc.depth,
                        doc.width,
                        net.depth(),
                        net.max_width()
                    )));
                }
                Ok(NetDocument::new(AnyNet::Standard(net), doc.certificate))
            }
            "shallow" => {
                let doc: ShallowDoc = serde_json::from_value(value).map_err(|e| shape("shallow", e))?;
                if doc.domain.dim() != doc.input_dim {
                    return Err(DocumentError::Invariant(format!(
                        "domain has {} dimensions but input_dim is {}",
                        doc.domain.dim(),
                        doc.input_dim
                    )));
                }
                let units = doc.units.into_iter().map(|u| ShallowUnit { a: u.a, b: u.b, c: u.c }).collect();
                let net = ShallowNet::new(units, doc.c0, doc.activation, doc.domain).map_err(invariant)?;
                Ok(NetDocument::new(AnyNet::Shallow(net), doc.certificate))
            }
            other => Err(DocumentError::Shape {
                kind: other.to_string(),
                message: "kind must be skip, standard or shallow".to_string(),
            }),
        }
    }
}
