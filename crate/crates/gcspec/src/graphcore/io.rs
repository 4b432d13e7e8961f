use super::RotationGraph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// On-disk form of a rotation graph. Edges are implied by the neighbor lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub valence: usize,
    pub vertices: Vec<String>,
    pub rotation: Vec<Vec<usize>>,
}

impl GraphFile {
    pub fn from_graph(g: &RotationGraph) -> Result<GraphFile> {
        if !g.is_simple() {
            return Err(Error::NotSimple("only simple graphs have a JSON form".into()));
        }
        let valence = g
            .regular_degree()
            .ok_or_else(|| Error::Malformed("graph is not regular".into()))?;
        Ok(GraphFile {
            valence,
            vertices: g.names().to_vec(),
            rotation: g.neighbor_lists(),
        })
    }

    /// Validates simplicity, regularity and connectivity.
    pub fn into_graph(self) -> Result<RotationGraph> {
        if self.valence != 3 && self.valence != 4 {
            return Err(Error::Malformed(format!("valence {} is not 3 or 4", self.valence)));
        }
        if self.rotation.is_empty() {
            return Err(Error::Malformed("no vertices".into()));
        }
        if self.vertices.len() != self.rotation.len() {
            return Err(Error::Malformed("vertex and rotation counts differ".into()));
        }
        for (v, r) in self.rotation.iter().enumerate() {
            if r.len() != self.valence {
                return Err(Error::NotRegular {
                    vertex: v,
                    degree: r.len(),
                    expected: self.valence,
                });
            }
        }
        let g = RotationGraph::from_neighbor_lists(&self.rotation)?.with_names(self.vertices)?;
        g.check_regular(self.valence)?;
        Ok(g)
    }
}

pub fn to_json_string(g: &RotationGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphFile::from_graph(g)?)?)
}

pub fn write_json(g: &RotationGraph, path: &Path) -> Result<()> {
    std::fs::write(path, to_json_string(g)?)?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<RotationGraph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Err(Error::Malformed(format!("{} is empty", path.display())));
    }
    serde_json::from_str::<GraphFile>(&text)?.into_graph()
}

pub fn to_dot(g: &RotationGraph) -> String {
    let mut s = String::from("graph G {\n");
    for (v, name) in g.names().iter().enumerate() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", name.replace('"', "\\\""));
    }
    for e in 0..g.num_edges() {
        let (a, b) = g.edge_endpoints(e);
        let _ = writeln!(s, "  {a} -- {b};");
    }
    s.push_str("}\n");
    s
}

pub fn to_csv(g: &RotationGraph) -> String {
    let mut s = String::from("source,target\n");
    for e in 0..g.num_edges() {
        let (a, b) = g.edge_endpoints(e);
        let _ = writeln!(s, "{a},{b}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{build_named, map_isomorphic};

    #[test]
    fn round_trip() {
        let g = build_named("tetrahedron").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.json");
        write_json(&g, &p).unwrap();
        let h = read_json(&p).unwrap();
        assert_eq!(g, h);
        assert!(map_isomorphic(&g, &h));
    }

    #[test]
    fn rejects_degree_five() {
        let rot: Vec<Vec<usize>> = (0..6).map(|v| (0..6).filter(|&u| u != v).collect()).collect();
        let f = GraphFile {
            valence: 4,
            vertices: (0..6).map(|v| v.to_string()).collect(),
            rotation: rot.clone(),
        };
        assert!(matches!(f.into_graph(), Err(Error::NotRegular { degree: 5, .. })));
        let f = GraphFile {
            valence: 5,
            vertices: (0..6).map(|v| v.to_string()).collect(),
            rotation: rot,
        };
        assert!(f.into_graph().is_err());
    }

    #[test]
    fn rejects_disconnected() {
        let mut rot = build_named("tetrahedron").unwrap().neighbor_lists();
        rot.extend(rot.clone().into_iter().map(|r| r.into_iter().map(|u| u + 4).collect::<Vec<_>>()));
        let f = GraphFile {
            valence: 3,
            vertices: (0..8).map(|v| v.to_string()).collect(),
            rotation: rot,
        };
        assert!(matches!(f.into_graph(), Err(Error::Disconnected)));
    }

    #[test]
    fn rejects_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.json");
        std::fs::write(&p, "").unwrap();
        assert!(read_json(&p).is_err());
    }

    #[test]
    fn dot_of_cube() {
        let s = to_dot(&build_named("cube").unwrap());
        assert_eq!(s.matches("label=").count(), 8);
        assert_eq!(s.matches(" -- ").count(), 12);
        let c = to_csv(&build_named("cube").unwrap());
        assert_eq!(c.lines().count(), 13);
    }
}
