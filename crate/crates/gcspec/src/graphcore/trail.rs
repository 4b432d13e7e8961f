use super::RotationGraph;
use crate::error::{Error, Result};

/// Closed Euler trail given as the sequence of traversed darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerATrail {
    pub darts: Vec<usize>,
}

impl EulerATrail {
    /// Visits where the trail goes straight through a 4-valent vertex,
    /// given as indices `i` of the arriving dart.
    pub fn straight_visits(&self, g: &RotationGraph) -> Vec<usize> {
        straight_visits(g, &self.darts)
    }

    /// Independent validity check: closed, every edge once, never straight.
    pub fn check(&self, g: &RotationGraph) -> std::result::Result<(), String> {
        let m = self.darts.len();
        if m != g.num_edges() {
            return Err(format!("trail has {m} darts for {} edges", g.num_edges()));
        }
        let mut used = vec![false; g.num_edges()];
        for (i, &d) in self.darts.iter().enumerate() {
            let e = g.edge_of(d);
            if used[e] {
                return Err(format!("edge {e} used twice"));
            }
            used[e] = true;
            let next = self.darts[(i + 1) % m];
            if g.target(d) != g.origin(next) {
                return Err(format!("trail breaks after position {i}"));
            }
        }
        if let Some(&i) = self.straight_visits(g).first() {
            return Err(format!("trail goes straight after position {i}"));
        }
        Ok(())
    }

    /// Darts traversed by the trail; at each vertex exactly two are outgoing.
    pub fn outward(&self, g: &RotationGraph) -> Vec<bool> {
        let mut out = vec![false; g.num_darts()];
        for &d in &self.darts {
            out[d] = true;
        }
        out
    }
}

fn straight_visits(g: &RotationGraph, seq: &[usize]) -> Vec<usize> {
    let m = seq.len();
    (0..m)
        .filter(|&i| {
            let a = g.theta(seq[i]);
            let b = seq[(i + 1) % m];
            let deg = g.degree(g.origin(b));
            deg == 4 && (g.position(b) + deg - g.position(a)) % deg == 2
        })
        .collect()
}

fn euler_circuit(g: &RotationGraph) -> Vec<usize> {
    let mut next = vec![0usize; g.n()];
    let mut used = vec![false; g.num_edges()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
    let mut circuit = Vec::with_capacity(g.num_edges());
    while let Some(&(v, din)) = stack.last() {
        let rot = g.rotation(v);
        while next[v] < rot.len() && used[g.edge_of(rot[next[v]])] {
            next[v] += 1;
        }
        if next[v] < rot.len() {
            let d = rot[next[v]];
            used[g.edge_of(d)] = true;
            stack.push((g.target(d), Some(d)));
        } else {
            stack.pop();
            if let Some(d) = din {
                circuit.push(d);
            }
        }
    }
    circuit.reverse();
    circuit
}

/// An Euler circuit of a connected 4-valent map that turns left or right at
/// every visit. Straight crossings are removed one at a time by reversing
/// the closed sub-trail between the two visits of the offending vertex.
pub fn euler_a_trail(g: &RotationGraph) -> Result<EulerATrail> {
    g.check_regular(4)?;
    let mut seq = euler_circuit(g);
    let m = seq.len();
    for _ in 0..=4 * m + 4 {
        let Some(&i) = straight_visits(g, &seq).first() else {
            return Ok(EulerATrail { darts: seq });
        };
        seq.rotate_left((i + 1) % m);
        let v = g.origin(seq[0]);
        let j = (0..m - 1)
            .find(|&j| g.target(seq[j]) == v)
            .expect("a 4-valent vertex is visited twice");
        let mut head: Vec<usize> = seq[..=j].iter().rev().map(|&d| g.theta(d)).collect();
        head.extend_from_slice(&seq[j + 1..]);
        seq = head;
    }
    Err(Error::InconsistentOrientation("A-trail repair did not converge".into()))
}
