use super::RotationGraph;
use std::collections::VecDeque;

fn invariant(g: &RotationGraph) -> (usize, usize, Vec<usize>, Vec<usize>) {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    deg.sort_unstable();
    let mut faces = g.faces().sizes();
    faces.sort_unstable();
    (g.n(), g.num_edges(), deg, faces)
}

/// Tries to extend `root_x ↦ root_y` to a map isomorphism. With `reverse`
/// the rotation is inverted, giving an orientation-reversing isomorphism.
fn extend(x: &RotationGraph, y: &RotationGraph, root_x: usize, root_y: usize, reverse: bool) -> bool {
    let mut fwd = vec![usize::MAX; x.num_darts()];
    let mut bwd = vec![usize::MAX; y.num_darts()];
    fwd[root_x] = root_y;
    bwd[root_y] = root_x;
    let mut queue = VecDeque::from([root_x]);
    while let Some(d) = queue.pop_front() {
        let e = fwd[d];
        let step_y = if reverse { y.sigma_inv(e) } else { y.sigma(e) };
        for (dx, dy) in [(x.theta(d), y.theta(e)), (x.sigma(d), step_y)] {
            if x.degree(x.origin(d)) != y.degree(y.origin(e)) {
                return false;
            }
            match (fwd[dx], bwd[dy]) {
                (usize::MAX, usize::MAX) => {
                    fwd[dx] = dy;
                    bwd[dy] = dx;
                    queue.push_back(dx);
                }
                (a, b) if a == dy && b == dx => {}
                _ => return false,
            }
        }
    }
    fwd.iter().all(|&d| d != usize::MAX)
}

/// Whether the two maps are isomorphic, allowing orientation reversal.
pub fn map_isomorphic(x: &RotationGraph, y: &RotationGraph) -> bool {
    if invariant(x) != invariant(y) {
        return false;
    }
    if x.num_darts() == 0 {
        return true;
    }
    let root = 0;
    (0..y.num_darts()).any(|r| extend(x, y, root, r, false) || extend(x, y, root, r, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::build_named;

    #[test]
    fn relabeled_cube() {
        let g = build_named("cube").unwrap();
        let h = g.relabel(&[5, 2, 7, 0, 1, 3, 6, 4], 2).unwrap();
        assert!(map_isomorphic(&g, &h));
        assert!(map_isomorphic(&g, &g.mirror()));
    }

    #[test]
    fn different_maps() {
        let cube = build_named("cube").unwrap();
        let oct = build_named("octahedron").unwrap();
        assert!(!map_isomorphic(&cube, &oct));
        let t = build_named("hex_torus(2)").unwrap();
        assert!(!map_isomorphic(&cube, &t));
    }

    #[test]
    fn same_graph_different_embedding() {
        // K4 with one rotation flipped is a torus map, not the tetrahedron.
        let tet = build_named("tetrahedron").unwrap();
        let mut rot = tet.neighbor_lists();
        rot[0].swap(0, 1);
        let twisted = RotationGraph::from_neighbor_lists(&rot).unwrap();
        assert!(!map_isomorphic(&tet, &twisted));
    }
}
