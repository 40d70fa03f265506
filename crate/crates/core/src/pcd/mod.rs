//! Path correlation data: synthesis from a graph, realizability checks and
//! logical source/receiver trees.

mod tree;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, NetworkGraph, VertexId};
use crate::validation::{ValidationReport, ViolationCode};

pub use tree::{build_receiver_tree, build_source_tree, LogicalTree, TreeKind, TreeNode};

/// Dense PCD table over an ordered boundary set.
///
/// * `len(b, b')` is the length of the route from `b` to `b'`;
/// * `src(b; b1, b2)` is the length of the common prefix of the routes from
///   `b` to `b1` and to `b2`;
/// * `rcv(b1, b2; b)` is the length of the common suffix of the routes from
///   `b1` and from `b2` to `b`.
///
/// Entries for repeated vertices are not stored. Unset entries read as NaN
/// and are reported by [`validate_pcd`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PcdDoc", into = "PcdDoc")]
pub struct PathCorrelationData {
    boundary: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    len: Vec<f64>,
    src: Vec<f64>,
    rcv: Vec<f64>,
}

impl PartialEq for PathCorrelationData {
    fn eq(&self, other: &Self) -> bool {
        let same = |a: &[f64], b: &[f64]| {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
        };
        self.boundary == other.boundary
            && same(&self.len, &other.len)
            && same(&self.src, &other.src)
            && same(&self.rcv, &other.rcv)
    }
}

impl PathCorrelationData {
    pub fn new(boundary: Vec<VertexId>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, b) in boundary.iter().enumerate() {
            if index.insert(b.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(b.to_string()));
            }
        }
        let n = boundary.len();
        Ok(Self {
            boundary,
            index,
            len: vec![f64::NAN; n * n],
            src: vec![f64::NAN; n * n * n],
            rcv: vec![f64::NAN; n * n * n],
        })
    }

    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    #[inline]
    pub fn len(&self, from: usize, to: usize) -> f64 {
        self.len[from * self.n() + to]
    }

    #[inline]
    pub fn src(&self, root: usize, b1: usize, b2: usize) -> f64 {
        let n = self.n();
        self.src[(root * n + b1) * n + b2]
    }

    #[inline]
    pub fn rcv(&self, b1: usize, b2: usize, root: usize) -> f64 {
        let n = self.n();
        self.rcv[(root * n + b1) * n + b2]
    }

    pub fn set_len(&mut self, from: usize, to: usize, value: f64) {
        let n = self.n();
        self.len[from * n + to] = value;
    }

    pub fn set_src(&mut self, root: usize, b1: usize, b2: usize, value: f64) {
        let n = self.n();
        self.src[(root * n + b1) * n + b2] = value;
        self.src[(root * n + b2) * n + b1] = value;
    }

    pub fn set_rcv(&mut self, b1: usize, b2: usize, root: usize, value: f64) {
        let n = self.n();
        self.rcv[(root * n + b1) * n + b2] = value;
        self.rcv[(root * n + b2) * n + b1] = value;
    }

    pub fn path_length(&self, from: &str, to: &str) -> Result<f64> {
        Ok(self.len(self.require(from)?, self.require(to)?))
    }

    pub fn source_pcd(&self, root: &str, b1: &str, b2: &str) -> Result<f64> {
        Ok(self.src(self.require(root)?, self.require(b1)?, self.require(b2)?))
    }

    pub fn receiver_pcd(&self, b1: &str, b2: &str, root: &str) -> Result<f64> {
        Ok(self.rcv(self.require(b1)?, self.require(b2)?, self.require(root)?))
    }

    /// Ordered triples `(b1, b2, b3)` of distinct boundary indices in
    /// lexicographic order.
    pub fn ordered_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && a != c && b != c {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pcd serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::try_from(serde_json::from_str::<PcdDoc>(s)?)
    }
}

/// Measures the PCD of a valid graph.
pub fn measure(graph: &NetworkGraph) -> Result<PathCorrelationData> {
    let report = graph::validate(graph);
    if !report.valid {
        return Err(Error::InvalidGraph(report));
    }
    let boundary = graph.boundary();
    let mut pcd = PathCorrelationData::new(graph.boundary_ids())?;
    let n = boundary.len();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pcd.set_len(i, j, graph::path_length_ix(graph, boundary[i], boundary[j])?);
            }
        }
    }
    for r in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if i == r || j == r {
                    continue;
                }
                let (_, d) = graph::source_junction_ix(graph, boundary[r], boundary[i], boundary[j])?;
                pcd.set_src(r, i, j, d);
                let (_, d) =
                    graph::receiver_junction_ix(graph, boundary[i], boundary[j], boundary[r])?;
                pcd.set_rcv(i, j, r, d);
            }
        }
    }
    Ok(pcd)
}

/// Checks completeness, ranges and the per-root three-point condition.
pub fn validate_pcd(pcd: &PathCorrelationData, eps: f64) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = pcd.n();
    let name = |i: usize| pcd.boundary[i].to_string();

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let l = pcd.len(i, j);
            if l.is_nan() {
                report.push(
                    ViolationCode::MissingEntry,
                    format!("no path length {} -> {}", name(i), name(j)),
                    vec![name(i), name(j)],
                );
            } else if !(l > 0.0 && l.is_finite()) {
                report.push(
                    ViolationCode::NonpositiveLength,
                    format!("path length {} -> {} is {l}", name(i), name(j)),
                    vec![name(i), name(j)],
                );
            }
        }
    }

    for r in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if i == r || j == r {
                    continue;
                }
                let s = pcd.src(r, i, j);
                let bound = pcd.len(r, i).min(pcd.len(r, j));
                check_entry(&mut report, s, bound, eps, || {
                    (format!("source pcd ({} < {}, {})", name(r), name(i), name(j)), vec![name(r), name(i), name(j)])
                });
                let v = pcd.rcv(i, j, r);
                let bound = pcd.len(i, r).min(pcd.len(j, r));
                check_entry(&mut report, v, bound, eps, || {
                    (format!("receiver pcd ({}, {} > {})", name(i), name(j), name(r)), vec![name(i), name(j), name(r)])
                });
            }
        }
    }

    for r in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if i == r || j == r || k == r {
                        continue;
                    }
                    let src = [pcd.src(r, i, j), pcd.src(r, i, k), pcd.src(r, j, k)];
                    if !three_point_ok(src, eps) {
                        report.push(
                            ViolationCode::ThreePointViolation,
                            format!(
                                "source pcd at {} over {}, {}, {} is not tree-like: {:?}",
                                name(r),
                                name(i),
                                name(j),
                                name(k),
                                src
                            ),
                            vec![name(r), name(i), name(j), name(k)],
                        );
                    }
                    let rcv = [pcd.rcv(i, j, r), pcd.rcv(i, k, r), pcd.rcv(j, k, r)];
                    if !three_point_ok(rcv, eps) {
                        report.push(
                            ViolationCode::ThreePointViolation,
                            format!(
                                "receiver pcd at {} over {}, {}, {} is not tree-like: {:?}",
                                name(r),
                                name(i),
                                name(j),
                                name(k),
                                rcv
                            ),
                            vec![name(r), name(i), name(j), name(k)],
                        );
                    }
                }
            }
        }
    }
    report
}

fn check_entry(
    report: &mut ValidationReport,
    value: f64,
    bound: f64,
    eps: f64,
    what: impl FnOnce() -> (String, Vec<String>),
) {
    if value.is_nan() {
        let (d, items) = what();
        report.push(ViolationCode::MissingEntry, format!("missing {d}"), items);
    } else if value < -eps || value > bound + eps {
        let (d, items) = what();
        report.push(
            ViolationCode::RangeViolation,
            format!("{d} = {value} outside [0, {bound}]"),
            items,
        );
    }
}

/// The minimum of the three values must be attained at least twice.
fn three_point_ok(v: [f64; 3], eps: f64) -> bool {
    if v.iter().any(|x| x.is_nan()) {
        // already reported as missing
        return true;
    }
    let m = v[0].min(v[1]).min(v[2]);
    v.iter().filter(|&&x| x <= m + eps).count() >= 2
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LenDoc {
    src: String,
    dst: String,
    len: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SrcDoc {
    root: String,
    b1: String,
    b2: String,
    value: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RcvDoc {
    b1: String,
    b2: String,
    root: String,
    value: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PcdDoc {
    boundary: Vec<String>,
    path_lengths: Vec<LenDoc>,
    source_pcd: Vec<SrcDoc>,
    receiver_pcd: Vec<RcvDoc>,
}

fn set_once(slot: &mut f64, value: f64, what: impl FnOnce() -> String) -> Result<()> {
    if !slot.is_nan() && slot.to_bits() != value.to_bits() {
        return Err(Error::InconsistentPcd(format!(
            "{} given twice with different values",
            what()
        )));
    }
    *slot = value;
    Ok(())
}

impl TryFrom<PcdDoc> for PathCorrelationData {
    type Error = Error;

    fn try_from(doc: PcdDoc) -> Result<Self> {
        let mut pcd = PathCorrelationData::new(doc.boundary.into_iter().map(VertexId::from).collect())?;
        let n = pcd.n();
        let distinct = |a: usize, b: usize, c: Option<usize>| {
            a != b && c.is_none_or(|c| c != a && c != b)
        };
        for e in doc.path_lengths {
            let (i, j) = (pcd.require(&e.src)?, pcd.require(&e.dst)?);
            if !distinct(i, j, None) {
                return Err(Error::InvalidArgument(format!("path length {} -> {}", e.src, e.dst)));
            }
            set_once(&mut pcd.len[i * n + j], e.len, || format!("path length {} -> {}", e.src, e.dst))?;
        }
        for e in doc.source_pcd {
            let (r, i, j) = (pcd.require(&e.root)?, pcd.require(&e.b1)?, pcd.require(&e.b2)?);
            if !distinct(i, j, Some(r)) {
                return Err(Error::InvalidArgument(format!(
                    "source pcd ({} < {}, {}) needs distinct vertices",
                    e.root, e.b1, e.b2
                )));
            }
            let what = || format!("source pcd ({} < {}, {})", e.root, e.b1, e.b2);
            set_once(&mut pcd.src[(r * n + i) * n + j], e.value, what)?;
            set_once(&mut pcd.src[(r * n + j) * n + i], e.value, what)?;
        }
        for e in doc.receiver_pcd {
            let (i, j, r) = (pcd.require(&e.b1)?, pcd.require(&e.b2)?, pcd.require(&e.root)?);
            if !distinct(i, j, Some(r)) {
                return Err(Error::InvalidArgument(format!(
                    "receiver pcd ({}, {} > {}) needs distinct vertices",
                    e.b1, e.b2, e.root
                )));
            }
            let what = || format!("receiver pcd ({}, {} > {})", e.b1, e.b2, e.root);
            set_once(&mut pcd.rcv[(r * n + i) * n + j], e.value, what)?;
            set_once(&mut pcd.rcv[(r * n + j) * n + i], e.value, what)?;
        }
        Ok(pcd)
    }
}

impl From<PathCorrelationData> for PcdDoc {
    fn from(p: PathCorrelationData) -> Self {
        let n = p.n();
        let name = |i: usize| p.boundary[i].to_string();
        let mut doc = PcdDoc {
            boundary: (0..n).map(name).collect(),
            path_lengths: Vec::new(),
            source_pcd: Vec::new(),
            receiver_pcd: Vec::new(),
        };
        for i in 0..n {
            for j in 0..n {
                if i != j && !p.len(i, j).is_nan() {
                    doc.path_lengths.push(LenDoc {
                        src: name(i),
                        dst: name(j),
                        len: p.len(i, j),
                    });
                }
            }
        }
        for r in 0..n {
            for i in 0..n {
                for j in i + 1..n {
                    if i == r || j == r {
                        continue;
                    }
                    if !p.src(r, i, j).is_nan() {
                        doc.source_pcd.push(SrcDoc {
                            root: name(r),
                            b1: name(i),
                            b2: name(j),
                            value: p.src(r, i, j),
                        });
                    }
                    if !p.rcv(i, j, r).is_nan() {
                        doc.receiver_pcd.push(RcvDoc {
                            b1: name(i),
                            b2: name(j),
                            root: name(r),
                            value: p.rcv(i, j, r),
                        });
                    }
                }
            }
        }
        doc
    }
}
