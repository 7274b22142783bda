//! Text and JSON codecs for the on-disk formats.
//!
//! Graph files are plain text: a `n m` header line, then one `u v` or
//! `u v w` line per edge. Clique sources add a class count to the header
//! and one line per class before the edges; domination sources add the
//! budget to the header. Instances and clusterings are JSON documents.
//! Blank lines and lines starting with `#` are ignored everywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_graph, GraphError, WeightedGraph};
use crate::reductions::{MccInstance, MsrProblem, ReductionError, Role, Sign};
use crate::solver::{Clustering, Variant};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Content lines with their 1-based positions; blanks and `#` skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn fields<const N: usize>(line: usize, s: &str, what: &str) -> Result<[u64; N], IoError> {
    let mut out = [0u64; N];
    let mut it = s.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("expected {N} fields in {what}")))?;
        *slot = tok
            .parse()
            .map_err(|_| parse_err(line, format!("bad number {tok:?} in {what}")))?;
    }
    if it.next().is_some() {
        return Err(parse_err(line, format!("expected {N} fields in {what}")));
    }
    Ok(out)
}

fn parse_edge(line: usize, s: &str) -> Result<(usize, usize, u64), IoError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() != 2 && toks.len() != 3 {
        return Err(parse_err(line, "edge lines are `u v` or `u v w`"));
    }
    let num = |tok: &str| -> Result<u64, IoError> {
        tok.parse()
            .map_err(|_| parse_err(line, format!("bad number {tok:?} in edge")))
    };
    let u = num(toks[0])? as usize;
    let v = num(toks[1])? as usize;
    let w = if toks.len() == 3 { num(toks[2])? } else { 1 };
    Ok((u, v, w))
}

pub fn write_graph_text(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v, w) in g.edges() {
        if g.unit() {
            out.push_str(&format!("{u} {v}\n"));
        } else {
            out.push_str(&format!("{u} {v} {w}\n"));
        }
    }
    out
}

pub fn read_graph_text(text: &str) -> Result<WeightedGraph, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let [n, m] = fields::<2>(hline, header, "header")?;
    let mut edges = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let (eline, s) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("header promises {m} edges")))?;
        edges.push(parse_edge(eline, s)?);
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "content after the last edge"));
    }
    Ok(build_graph(n as usize, &edges)?)
}

pub fn write_mcc_text(mcc: &MccInstance) -> String {
    let g = mcc.graph();
    let mut out = format!("{} {} {}\n", g.n(), g.m(), mcc.k());
    for class in mcc.classes() {
        let words: Vec<String> = class.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    for &(u, v, _) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_mcc_text(text: &str) -> Result<MccInstance, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m k` header"))?;
    let [n, m, k] = fields::<3>(hline, header, "header")?;
    let mut classes = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let (cline, s) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("header promises {k} class lines")))?;
        let class: Result<Vec<usize>, IoError> = s
            .split_whitespace()
            .map(|tok| {
                tok.parse()
                    .map_err(|_| parse_err(cline, format!("bad vertex {tok:?} in class")))
            })
            .collect();
        classes.push(class?);
    }
    let mut edges = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let (eline, s) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("header promises {m} edges")))?;
        let [u, v] = fields::<2>(eline, s, "edge")?;
        edges.push((u as usize, v as usize, 1));
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "content after the last edge"));
    }
    Ok(MccInstance::new(build_graph(n as usize, &edges)?, classes)?)
}

pub fn write_ds_text(g: &WeightedGraph, k: usize) -> String {
    let mut out = format!("{} {} {}\n", g.n(), g.m(), k);
    for &(u, v, _) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_ds_text(text: &str) -> Result<(WeightedGraph, usize), IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m k` header"))?;
    let [n, m, k] = fields::<3>(hline, header, "header")?;
    let mut edges = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let (eline, s) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("header promises {m} edges")))?;
        let [u, v] = fields::<2>(eline, s, "edge")?;
        edges.push((u as usize, v as usize, 1));
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "content after the last edge"));
    }
    Ok((build_graph(n as usize, &edges)?, k as usize))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    graph: GraphJson,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<u64>,
    variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    allowed_centers: Option<Vec<usize>>,
}

pub fn write_instance_json(p: &MsrProblem) -> String {
    let allowed_centers = match &p.variant {
        Variant::AllowedCenters(a) => Some(a.clone()),
        _ => None,
    };
    let doc = InstanceJson {
        graph: GraphJson {
            n: p.graph.n(),
            edges: p.graph.edges().to_vec(),
        },
        k: p.k,
        delta: p.delta,
        variant: p.variant.name().to_string(),
        allowed_centers,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn read_instance_json(text: &str) -> Result<MsrProblem, IoError> {
    let doc: InstanceJson = serde_json::from_str(text)?;
    let graph = build_graph(doc.graph.n, &doc.graph.edges)?;
    let variant = match (doc.variant.as_str(), doc.allowed_centers) {
        ("standard", None) => Variant::Standard,
        ("exact", None) => Variant::ExactNonZero,
        ("allowed", Some(a)) => Variant::AllowedCenters(a),
        ("allowed", None) => {
            return Err(IoError::Format(
                "variant \"allowed\" needs allowed_centers".into(),
            ))
        }
        (v, _) => {
            return Err(IoError::Format(format!(
                "unknown variant {v:?} (or stray allowed_centers)"
            )))
        }
    };
    Ok(MsrProblem {
        graph,
        k: doc.k,
        delta: doc.delta,
        variant,
    })
}

#[derive(Serialize, Deserialize)]
struct ClusteringJson {
    pairs: Vec<(usize, u64)>,
}

pub fn write_clustering_json(c: &Clustering) -> String {
    let doc = ClusteringJson {
        pairs: c.pairs().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn read_clustering_json(text: &str) -> Result<Clustering, IoError> {
    let doc: ClusteringJson = serde_json::from_str(text)?;
    Ok(Clustering::new(doc.pairs))
}

/// One line per point: `index tag fields`, with `.` for an absent field.
pub fn write_roles_text(roles: &[Role]) -> String {
    let mut out = String::new();
    for (i, role) in roles.iter().enumerate() {
        let line = match role {
            Role::Original { vertex, class } => match class {
                Some(c) => format!("{i} original {vertex} {c}"),
                None => format!("{i} original {vertex} ."),
            },
            Role::Apex { class } => format!("{i} apex {class}"),
            Role::Anchor { class, sign } => format!("{i} anchor {class} {}", sign.symbol()),
            Role::Leaf { class, sign, index } => {
                let s = sign.map_or('.', Sign::symbol);
                format!("{i} leaf {class} {s} {index}")
            }
            Role::NonEdge { u, v } => format!("{i} nonedge {u} {v}"),
            Role::Subdivision { a, b, offset } => format!("{i} subdiv {a} {b} {offset}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn read_roles_text(text: &str) -> Result<Vec<Role>, IoError> {
    let mut roles = Vec::new();
    for (lineno, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(parse_err(lineno, "role lines are `index tag fields`"));
        }
        let num = |tok: &str| -> Result<usize, IoError> {
            tok.parse()
                .map_err(|_| parse_err(lineno, format!("bad number {tok:?} in role")))
        };
        let sign = |tok: &str| -> Result<Sign, IoError> {
            match tok {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                _ => Err(parse_err(lineno, format!("bad sign {tok:?} in role"))),
            }
        };
        if num(toks[0])? != roles.len() {
            return Err(parse_err(lineno, "role indices must be consecutive"));
        }
        let role = match (toks[1], toks.len()) {
            ("original", 4) => Role::Original {
                vertex: num(toks[2])?,
                class: if toks[3] == "." {
                    None
                } else {
                    Some(num(toks[3])?)
                },
            },
            ("apex", 3) => Role::Apex {
                class: num(toks[2])?,
            },
            ("anchor", 4) => Role::Anchor {
                class: num(toks[2])?,
                sign: sign(toks[3])?,
            },
            ("leaf", 5) => Role::Leaf {
                class: num(toks[2])?,
                sign: if toks[3] == "." {
                    None
                } else {
                    Some(sign(toks[3])?)
                },
                index: num(toks[4])?,
            },
            ("nonedge", 4) => Role::NonEdge {
                u: num(toks[2])?,
                v: num(toks[3])?,
            },
            ("subdiv", 5) => Role::Subdivision {
                a: num(toks[2])?,
                b: num(toks[3])?,
                offset: num(toks[4])? as u64,
            },
            (tag, _) => return Err(parse_err(lineno, format!("unknown role line {tag:?}"))),
        };
        roles.push(role);
    }
    Ok(roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{
        reduce_mcc_allowed_kdelta, reduce_mcc_vertex_cover, reduce_mcc_weighted_bipartite,
    };

    fn sample_mcc() -> MccInstance {
        MccInstance::new(
            build_graph(4, &[(0, 2, 1), (1, 3, 1), (0, 3, 1)]).unwrap(),
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn graph_text_round_trip() {
        let g = build_graph(4, &[(0, 1, 3), (1, 2, 1), (0, 3, 7)]).unwrap();
        let text = write_graph_text(&g);
        let back = read_graph_text(&text).unwrap();
        assert_eq!(back.edges(), g.edges());

        let unit = build_graph(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let text = write_graph_text(&unit);
        assert!(text.lines().nth(1).unwrap().split_whitespace().nth(2).is_none());
        assert_eq!(read_graph_text(&text).unwrap().edges(), unit.edges());
    }

    #[test]
    fn graph_text_rejects_malformed_input() {
        assert!(matches!(
            read_graph_text(""),
            Err(IoError::Parse { line: 1, .. })
        ));
        assert!(read_graph_text("2 1\n0 x\n").is_err());
        assert!(read_graph_text("2 2\n0 1\n").is_err());
        assert!(read_graph_text("2 1\n0 1\n1 0\n").is_err());
        // Comments and blank lines pass through.
        let g = read_graph_text("# tiny path\n\n2 1\n0 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn mcc_text_round_trip() {
        let mcc = sample_mcc();
        let back = read_mcc_text(&write_mcc_text(&mcc)).unwrap();
        assert_eq!(back.classes(), mcc.classes());
        assert_eq!(back.graph().edges(), mcc.graph().edges());
    }

    #[test]
    fn ds_text_round_trip() {
        let g = build_graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        let (back, k) = read_ds_text(&write_ds_text(&g, 2)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn instance_json_round_trip_all_variants() {
        let graph = build_graph(3, &[(0, 1, 2), (1, 2, 2)]).unwrap();
        let variants = [
            Variant::Standard,
            Variant::ExactNonZero,
            Variant::AllowedCenters(vec![0, 2]),
        ];
        for variant in variants {
            let p = MsrProblem {
                graph: graph.clone(),
                k: 2,
                delta: Some(4),
                variant,
            };
            let back = read_instance_json(&write_instance_json(&p)).unwrap();
            assert_eq!(back.k, p.k);
            assert_eq!(back.delta, p.delta);
            assert_eq!(back.variant, p.variant);
            assert_eq!(back.graph.edges(), p.graph.edges());
        }
        let open = MsrProblem {
            graph,
            k: 1,
            delta: None,
            variant: Variant::Standard,
        };
        let text = write_instance_json(&open);
        assert!(!text.contains("delta"));
        assert_eq!(read_instance_json(&text).unwrap().delta, None);
        assert!(read_instance_json("{\"graph\":{\"n\":2,\"edges\":[[0,1,1]]},\"k\":1,\"variant\":\"allowed\"}").is_err());
    }

    #[test]
    fn clustering_json_round_trip() {
        let c = Clustering::new(vec![(3, 4), (0, 8)]);
        let back = read_clustering_json(&write_clustering_json(&c)).unwrap();
        assert_eq!(back.pairs(), c.pairs());
    }

    #[test]
    fn roles_round_trip_covers_every_tag() {
        let weighted = reduce_mcc_weighted_bipartite(&sample_mcc()).unwrap();
        let back = read_roles_text(&write_roles_text(&weighted.roles)).unwrap();
        assert_eq!(back, weighted.roles);

        let anchored = reduce_mcc_vertex_cover(&sample_mcc()).unwrap();
        assert!(anchored
            .roles
            .iter()
            .any(|r| matches!(r, Role::Anchor { .. })));
        let back = read_roles_text(&write_roles_text(&anchored.roles)).unwrap();
        assert_eq!(back, anchored.roles);

        let unit = reduce_mcc_allowed_kdelta(&sample_mcc()).unwrap();
        assert!(unit
            .roles
            .iter()
            .any(|r| matches!(r, Role::Subdivision { .. })));
        let back = read_roles_text(&write_roles_text(&unit.roles)).unwrap();
        assert_eq!(back, unit.roles);
    }
}
