// SPDX-License-Identifier: Apache-2.0

/// Simple undirected graph on `0..n`, used for Dynkin-type diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<bool>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![vec![false; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not allowed");
        self.adjacency[a][b] = true;
        self.adjacency[b][a] = true;
    }

    /// The path `A_n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// The tree `T_{p,q,r}`: three arms with `p`, `q` and `r` nodes counted
    /// from a shared central node, so `p + q + r - 2` nodes in total.
    /// `T_{2,3,5}` is `E_8` and `T_{2,3,7}` is `E_10`.
    pub fn t_shape(p: usize, q: usize, r: usize) -> Self {
        assert!(p >= 1 && q >= 1 && r >= 1);
        let n = p + q + r - 2;
        let mut g = Self::empty(n);
        let mut next = 1;
        for arm in [p, q, r] {
            let mut prev = 0;
            for _ in 1..arm {
                g.add_edge(prev, next);
                prev = next;
                next += 1;
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&e| e).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.adjacency[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Exhaustive isomorphism test (backtracking with degree pruning).
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        let n = self.len();
        if n != other.len() || self.edges().len() != other.edges().len() {
            return false;
        }
        let mut da: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let mut mapping = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, 0, &mut mapping, &mut used)
    }

    fn extend(&self, other: &Graph, v: usize, mapping: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || self.degree(v) != other.degree(w) {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == other.has_edge(mapping[u], w));
            if !consistent {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if self.extend(other, v + 1, mapping, used) {
                return true;
            }
            used[w] = false;
        }
        mapping[v] = usize::MAX;
        false
    }
}
