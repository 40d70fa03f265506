use serde::Serialize;

use super::PathCorrelationData;
use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    Source,
    Receiver,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub id: VertexId,
    /// Distance from the root (source trees) or to the root (receiver trees).
    pub depth: f64,
    pub parent: Option<usize>,
    pub boundary: bool,
}

/// Rooted weighted tree of the junctions seen from (or towards) one boundary
/// vertex. Node 0 is the root; every other boundary vertex is a leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalTree {
    pub kind: TreeKind,
    pub root: VertexId,
    pub nodes: Vec<TreeNode>,
}

impl LogicalTree {
    pub fn node(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id.as_str() == id)
    }

    /// `(parent, child, weight)` for every tree edge.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.parent.map(|p| (p, i, n.depth - self.nodes[p].depth)))
            .collect()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.boundary).count()
    }

    pub fn leaf_depth(&self, b: &str) -> Option<f64> {
        let i = self.node(b)?;
        (i != 0 && self.nodes[i].boundary).then(|| self.nodes[i].depth)
    }

    /// Depth of the lowest common ancestor of two distinct leaves.
    pub fn junction_depth(&self, b1: &str, b2: &str) -> Option<f64> {
        let (i, j) = (self.node(b1)?, self.node(b2)?);
        if i == j || i == 0 || j == 0 {
            return None;
        }
        let ancestors = |mut v: usize| {
            let mut out = vec![v];
            while let Some(p) = self.nodes[v].parent {
                out.push(p);
                v = p;
            }
            out
        };
        let up = ancestors(i);
        ancestors(j)
            .into_iter()
            .find(|a| up.contains(a))
            .map(|a| self.nodes[a].depth)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("tree serializes")
    }

    pub fn to_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct NodeDoc<'a> {
            id: &'a str,
            depth: f64,
            parent: Option<&'a str>,
            boundary: bool,
        }
        #[derive(Serialize)]
        struct EdgeDoc<'a> {
            from: &'a str,
            to: &'a str,
            weight: f64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            kind: TreeKind,
            root: &'a str,
            nodes: Vec<NodeDoc<'a>>,
            edges: Vec<EdgeDoc<'a>>,
        }
        let doc = Doc {
            kind: self.kind,
            root: self.root.as_str(),
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    id: n.id.as_str(),
                    depth: n.depth,
                    parent: n.parent.map(|p| self.nodes[p].id.as_str()),
                    boundary: n.boundary,
                })
                .collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(p, c, w)| EdgeDoc {
                    from: self.nodes[p].id.as_str(),
                    to: self.nodes[c].id.as_str(),
                    weight: w,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("tree serializes")
    }
}

pub fn build_source_tree(pcd: &PathCorrelationData, root: &str) -> Result<LogicalTree> {
    let r = pcd.require(root)?;
    build(pcd, TreeKind::Source, r, |a, b| pcd.src(r, a, b), |b| pcd.len(r, b), eps_default())
}

pub fn build_receiver_tree(pcd: &PathCorrelationData, root: &str) -> Result<LogicalTree> {
    let r = pcd.require(root)?;
    build(pcd, TreeKind::Receiver, r, |a, b| pcd.rcv(a, b, r), |b| pcd.len(b, r), eps_default())
}

fn eps_default() -> f64 {
    crate::DEFAULT_EPSILON
}

struct Work {
    depth: f64,
    parent: Option<usize>,
    boundary: Option<usize>,
    alive: bool,
}

struct Cluster {
    members: Vec<usize>,
    node: usize,
}

fn build(
    pcd: &PathCorrelationData,
    kind: TreeKind,
    root: usize,
    value: impl Fn(usize, usize) -> f64,
    leaf_depth: impl Fn(usize) -> f64,
    eps: f64,
) -> Result<LogicalTree> {
    let n = pcd.n();
    let name = |i: usize| pcd.boundary()[i].to_string();
    let mut work = vec![Work {
        depth: 0.0,
        parent: None,
        boundary: Some(root),
        alive: true,
    }];
    let mut clusters = Vec::new();
    for b in (0..n).filter(|&b| b != root) {
        let depth = leaf_depth(b);
        if depth.is_nan() || depth <= eps {
            return Err(Error::InconsistentPcd(format!(
                "path length between {} and {} is {depth}",
                name(root),
                name(b)
            )));
        }
        work.push(Work {
            depth,
            parent: None,
            boundary: Some(b),
            alive: true,
        });
        clusters.push(Cluster {
            members: vec![b],
            node: work.len() - 1,
        });
    }
    // lexicographic tie-breaking by smallest member id
    let key = |c: &Cluster| c.members.iter().map(|&m| pcd.boundary()[m].as_str()).min().unwrap_or("");

    loop {
        clusters.sort_by(|a, b| key(a).cmp(key(b)));
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let v = value(clusters[i].members[0], clusters[j].members[0]);
                if best.is_none_or(|(_, _, m)| v > m + eps) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((i, j, v)) = best else { break };
        if v <= eps {
            break;
        }
        for &a in &clusters[i].members {
            for &b in &clusters[j].members {
                let w = value(a, b);
                if (w - v).abs() > eps {
                    return Err(Error::InconsistentPcd(format!(
                        "junction of {} and {} seen from {} is at {w}, expected {v}",
                        name(a),
                        name(b),
                        name(root)
                    )));
                }
            }
        }
        let removed = clusters.remove(j);
        let kept = &mut clusters[i];
        let (a, b) = (kept.node, removed.node);
        let internal_at = |x: usize| work[x].boundary.is_none() && (work[x].depth - v).abs() <= eps;
        let node = if internal_at(a) && internal_at(b) {
            for w in work.iter_mut() {
                if w.parent == Some(b) {
                    w.parent = Some(a);
                }
            }
            work[b].alive = false;
            a
        } else if internal_at(a) {
            attach(&mut work, b, a, name)?;
            a
        } else if internal_at(b) {
            attach(&mut work, a, b, name)?;
            b
        } else {
            work.push(Work {
                depth: v,
                parent: None,
                boundary: None,
                alive: true,
            });
            let j = work.len() - 1;
            attach(&mut work, a, j, name)?;
            attach(&mut work, b, j, name)?;
            j
        };
        kept.node = node;
        kept.members.extend(removed.members);
    }
    for c in &clusters {
        attach(&mut work, c.node, 0, name)?;
    }

    // compact: root, internal nodes in creation order, then leaves
    let mut order = vec![0];
    order.extend((1..work.len()).filter(|&i| work[i].alive && work[i].boundary.is_none()));
    order.extend((1..work.len()).filter(|&i| work[i].boundary.is_some()));
    let mut new_ix = vec![usize::MAX; work.len()];
    for (k, &i) in order.iter().enumerate() {
        new_ix[i] = k;
    }
    let mut counter = 0;
    let nodes = order
        .iter()
        .map(|&i| {
            let w = &work[i];
            let id = match w.boundary {
                Some(b) => pcd.boundary()[b].clone(),
                None => loop {
                    counter += 1;
                    let id = format!("j{counter}");
                    if pcd.index_of(&id).is_none() {
                        break VertexId::new(id);
                    }
                },
            };
            TreeNode {
                id,
                depth: w.depth,
                parent: w.parent.map(|p| new_ix[p]),
                boundary: w.boundary.is_some(),
            }
        })
        .collect();
    Ok(LogicalTree {
        kind,
        root: pcd.boundary()[root].clone(),
        nodes,
    })
}

fn attach(work: &mut [Work], child: usize, parent: usize, name: impl Fn(usize) -> String) -> Result<()> {
    if work[child].depth <= work[parent].depth {
        let who = work[child]
            .boundary
            .map(&name)
            .unwrap_or_else(|| format!("junction at {}", work[child].depth));
        return Err(Error::InconsistentPcd(format!(
            "{who} is not deeper than its junction at {}",
            work[parent].depth
        )));
    }
    work[child].parent = Some(parent);
    Ok(())
}
