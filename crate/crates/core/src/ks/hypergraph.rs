use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex/edge incidence of a ray system: one edge per context.
///
/// Can be derived from a [`RaySystem`](super::RaySystem) or built directly
/// for structure-only analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextHypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl ContextHypergraph {
    /// Every edge must be nonempty, hold distinct in-range vertices, and
    /// have the same size as every other edge.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let rank = edges.first().map(Vec::len);
        for (j, edge) in edges.iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::Config(format!("edge {j} is empty")));
            }
            if Some(edge.len()) != rank {
                return Err(Error::Config(format!(
                    "edge {j} has {} vertices, expected {}",
                    edge.len(),
                    rank.unwrap_or(0)
                )));
            }
            for (pos, &v) in edge.iter().enumerate() {
                if v >= vertex_count {
                    return Err(Error::Config(format!(
                        "edge {j} references vertex {v} but only {vertex_count} exist"
                    )));
                }
                if edge[..pos].contains(&v) {
                    return Err(Error::Config(format!("edge {j} repeats vertex {v}")));
                }
            }
        }
        Ok(ContextHypergraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Common edge size, or `None` for an edgeless hypergraph.
    pub fn rank(&self) -> Option<usize> {
        self.edges.first().map(Vec::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for v in self.edges.iter().flatten() {
            deg[*v] += 1;
        }
        deg
    }

    /// For each vertex, the edges containing it in ascending order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (j, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(j);
            }
        }
        inc
    }

    /// Same hypergraph with vertex `v` renamed to `perm[v]` and edges listed
    /// in the order given by `edge_order`.
    pub fn relabeled(&self, perm: &[usize], edge_order: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count || edge_order.len() != self.edges.len() {
            return Err(Error::Config("relabeling has the wrong length".into()));
        }
        let edges = edge_order
            .iter()
            .map(|&j| self.edges[j].iter().map(|&v| perm[v]).collect())
            .collect();
        ContextHypergraph::new(self.vertex_count, edges)
    }
}

/// Verdict of the parity argument. Never claims a proof it does not have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateResult {
    ProofOfNoncolorability,
    Inconclusive,
}

impl fmt::Display for CertificateResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateResult::ProofOfNoncolorability => "PROOF_OF_NONCOLORABILITY",
            CertificateResult::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// If every vertex lies in an even number of edges, summing the ones of any
/// valuation edge by edge counts each vertex an even number of times. An
/// exactly-one-per-edge valuation would make that sum equal the edge count,
/// so an odd edge count rules it out.
pub fn parity_certificate(h: &ContextHypergraph) -> CertificateResult {
    let all_even = h.degrees().iter().all(|d| d % 2 == 0);
    if all_even && h.edges().len() % 2 == 1 {
        CertificateResult::ProofOfNoncolorability
    } else {
        CertificateResult::Inconclusive
    }
}

/// A {0,1} valuation of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(bits: &str) -> Result<Self> {
        bits.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }

    /// Bit `k` of `index`, most significant bit first, gives vertex `k`.
    /// Enumerating `index` upwards therefore walks assignments in
    /// lexicographic order.
    pub fn from_index(index: u64, n: usize) -> Self {
        Assignment((0..n).map(|k| (index >> (n - 1 - k)) & 1 == 1).collect())
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones_in(&self, edge: &[usize]) -> usize {
        edge.iter().filter(|&&v| self.0[v]).count()
    }

    /// True when every edge carries exactly one 1.
    pub fn is_noncontextual_coloring(&self, h: &ContextHypergraph) -> bool {
        self.len() == h.vertex_count() && h.edges().iter().all(|e| self.ones_in(e) == 1)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_inconclusive() {
        let h = ContextHypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(parity_certificate(&h), CertificateResult::Inconclusive);
    }

    #[test]
    fn two_disjoint_edges_are_inconclusive() {
        let h = ContextHypergraph::new(8, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        assert_eq!(parity_certificate(&h), CertificateResult::Inconclusive);
    }

    #[test]
    fn triangle_of_pairs_is_proved() {
        // Three 2-edges around a triangle: every vertex has degree 2, 3 edges.
        let h = ContextHypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(
            parity_certificate(&h),
            CertificateResult::ProofOfNoncolorability
        );
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(ContextHypergraph::new(3, vec![vec![0, 3]]).is_err());
        assert!(ContextHypergraph::new(3, vec![vec![0, 0]]).is_err());
        assert!(ContextHypergraph::new(3, vec![vec![0, 1], vec![2]]).is_err());
        assert!(ContextHypergraph::new(3, vec![vec![]]).is_err());
    }

    #[test]
    fn assignment_index_order_is_lexicographic() {
        assert_eq!(Assignment::from_index(0b100, 3).to_string(), "100");
        assert_eq!(Assignment::from_index(1, 4).to_string(), "0001");
        assert!(Assignment::from_index(3, 5) < Assignment::from_index(4, 5));
        assert_eq!(
            Assignment::parse("0110").unwrap(),
            Assignment::from_index(6, 4)
        );
        assert!(Assignment::parse("01x").is_err());
    }
}
