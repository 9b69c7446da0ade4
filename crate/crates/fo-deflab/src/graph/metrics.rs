//! All-pairs distances, eccentricities, diameter, radius, centers.

use super::Graph;
use std::collections::VecDeque;

/// Graph distance with an explicit marker for disconnected pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(u32),
    Infinity,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Distance::Infinity)
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Distance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Metrics {
    pub distances: Vec<Vec<Distance>>,
    pub eccentricities: Vec<Distance>,
    pub diameter: Distance,
    pub radius: Distance,
    pub centers: Vec<usize>,
}

impl Graph {
    pub fn bfs_distances(&self, from: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinity; self.order()];
        dist[from] = Distance::Finite(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_infinite() {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Distance {
        self.bfs_distances(u)[v]
    }

    pub fn metrics(&self) -> Metrics {
        let n = self.order();
        let distances: Vec<Vec<Distance>> = (0..n).map(|v| self.bfs_distances(v)).collect();
        let eccentricities: Vec<Distance> = distances
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(Distance::Finite(0)))
            .collect();
        let diameter = eccentricities
            .iter()
            .copied()
            .max()
            .unwrap_or(Distance::Finite(0));
        let radius = eccentricities
            .iter()
            .copied()
            .min()
            .unwrap_or(Distance::Finite(0));
        let centers = (0..n).filter(|&v| eccentricities[v] == radius).collect();
        Metrics {
            distances,
            eccentricities,
            diameter,
            radius,
            centers,
        }
    }

    /// A shortest path between two connected vertices (including endpoints).
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let dist = self.bfs_distances(from);
        dist[to].finite()?;
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            let d = dist[cur].finite().unwrap();
            // lowest-id predecessor for determinism
            let prev = self
                .neighbors(cur)
                .find(|&w| dist[w] == Distance::Finite(d - 1))
                .expect("predecessor on a shortest path");
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_five_metrics() {
        let m = Graph::path(5).metrics();
        assert_eq!(m.diameter, Distance::Finite(4));
        assert_eq!(m.radius, Distance::Finite(2));
        assert_eq!(m.centers, vec![2]);
    }

    #[test]
    fn disconnected_has_infinite_diameter() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.metrics().diameter, Distance::Infinity);
    }

    #[test]
    fn even_diameter_tree_has_unique_center_on_diametral_paths() {
        // Checked over all trees of order <= 9 in the trees module tests;
        // spot-check a spider here.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (2, 6)]).unwrap();
        let m = g.metrics();
        assert_eq!(m.diameter, Distance::Finite(4));
        assert_eq!(m.centers, vec![2]);
        let p = g.shortest_path(0, 5).unwrap();
        assert!(p.contains(&2));
    }
}
