use super::{Graph, GraphError};

/// `H_n`: all `n`-bit vectors, adjacent when they agree in exactly one coordinate.
pub fn build_hn(n: usize) -> Graph {
    assert!((1..=24).contains(&n), "H_n supported for 1 <= n <= 24");
    let full = (1u32 << n) - 1;
    let mut g = Graph::empty(1 << n);
    for x in 0..=full {
        for i in 0..n {
            // agree only in coordinate i
            let y = x ^ (full ^ (1 << i));
            if x < y {
                g.add_edge_unchecked(x as usize, y as usize);
            }
        }
    }
    g
}

/// The cycle `C_n` on vertices `0..n`, edge `i` joining `i` and `i + 1 mod n`.
pub fn build_cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge_unchecked(i, (i + 1) % n);
    }
    g
}

/// The projective cube `PQ_{2k}` realised as the even-weight component of
/// `H_{2k+1}`.
///
/// Vertex `i` is the `i`-th even-weight `(2k+1)`-bit vector in increasing
/// numeric order. Bit `j` of a vector is coordinate `j + 1`.
#[derive(Debug, Clone)]
pub struct ProjectiveCube {
    pub graph: Graph,
    bits: usize,
    vectors: Vec<u32>,
    index: Vec<usize>,
}

impl ProjectiveCube {
    /// Number of coordinates, `2k + 1`.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn vector(&self, v: usize) -> u32 {
        self.vectors[v]
    }

    /// Even-weight representative of `x` (complemented if `x` has odd weight).
    pub fn canonical(&self, x: u32) -> u32 {
        if x.count_ones() % 2 == 1 {
            x ^ self.full()
        } else {
            x
        }
    }

    /// Vertex carrying `x` or its complement.
    pub fn vertex_of(&self, x: u32) -> Option<usize> {
        let c = self.canonical(x) as usize;
        self.index.get(c).copied().filter(|&i| i != usize::MAX)
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.bits) - 1
    }
}

/// `PQ_dim` for an even `dim >= 2`.
pub fn build_pq(dim: usize) -> ProjectiveCube {
    assert!(dim >= 2 && dim.is_multiple_of(2), "projective cube dimension must be even and >= 2");
    let bits = dim + 1;
    let full = (1u32 << bits) - 1;
    let vectors: Vec<u32> = (0..=full).filter(|x| x.count_ones() % 2 == 0).collect();
    let mut index = vec![usize::MAX; 1 << bits];
    for (i, &x) in vectors.iter().enumerate() {
        index[x as usize] = i;
    }
    let mut graph = Graph::empty(vectors.len());
    for (i, &x) in vectors.iter().enumerate() {
        for c in 0..bits {
            let y = x ^ (full ^ (1 << c));
            let j = index[y as usize];
            if i < j {
                graph.add_edge_unchecked(i, j);
            }
        }
    }
    ProjectiveCube {
        graph,
        bits,
        vectors,
        index,
    }
}

/// Embeds a subcubic `g` into a cubic graph using an `r`-regular `h`, where
/// `r` is the total degree deficiency of `g`.
///
/// Copy `c` of `g` occupies vertices `c * n .. (c + 1) * n`. Edges of `h` are
/// processed in id order; each one joins the lowest-id vertex with a free
/// slot in each of the two copies it connects.
pub fn cubic_completion(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.max_degree() > 3 {
        return Err(GraphError::Invalid(format!(
            "input has maximum degree {} > 3",
            g.max_degree()
        )));
    }
    let n = g.n();
    let r: usize = (0..n).map(|v| 3 - g.degree(v)).sum();
    if !h.is_regular(r) {
        return Err(GraphError::Invalid(format!(
            "auxiliary graph must be {r}-regular"
        )));
    }
    let slots: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, 3 - g.degree(v)))
        .collect();
    let mut out = g.disjoint_copies(h.n());
    let mut cursor = vec![0usize; h.n()];
    let mut take = |c: usize| -> Result<usize, GraphError> {
        let v = *slots.get(cursor[c]).ok_or_else(|| {
            GraphError::Invalid(format!("copy {c} ran out of deficient vertices"))
        })?;
        cursor[c] += 1;
        Ok(c * n + v)
    };
    for &(x, y) in h.edges() {
        let a = take(x)?;
        let b = take(y)?;
        out.add_edge_unchecked(a, b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_k4(g: &Graph) -> bool {
        g.n() == 4 && g.m() == 6
    }

    #[test]
    fn pq2_is_k4() {
        assert!(is_k4(&build_pq(2).graph));
    }

    #[test]
    fn pq4_is_clebsch() {
        let pq = build_pq(4);
        let g = &pq.graph;
        assert_eq!((g.n(), g.m()), (16, 40));
        assert!(g.is_regular(5));
        // brute-force triangle scan
        for u in 0..16 {
            for v in u + 1..16 {
                for w in v + 1..16 {
                    let t = g.find_edge(u, v).is_some()
                        && g.find_edge(v, w).is_some()
                        && g.find_edge(u, w).is_some();
                    assert!(!t);
                }
            }
        }
        assert_eq!(g.girth(), Some(4));
    }

    #[test]
    fn h3_is_two_k4() {
        let h = build_hn(3);
        let (count, comp) = h.components();
        assert_eq!(count, 2);
        for side in 0..2 {
            let members: Vec<usize> = (0..8).filter(|&v| comp[v] == side).collect();
            assert_eq!(members.len(), 4);
            let parity = (members[0] as u32).count_ones() % 2;
            for &a in &members {
                assert_eq!((a as u32).count_ones() % 2, parity);
                for &b in &members {
                    if a != b {
                        assert!(h.find_edge(a, b).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn completion_of_cubic_graph_is_identity() {
        let p = crate::graphs::tests::petersen();
        let h = Graph::empty(1);
        assert_eq!(cubic_completion(&p, &h).unwrap(), p);
    }

    #[test]
    fn completion_of_single_edge_with_k5() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut k5 = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        let k5 = Graph::from_edges(5, &k5).unwrap();
        let out = cubic_completion(&edge, &k5).unwrap();
        assert_eq!(out.n(), 10);
        assert!(out.is_cubic());
        assert_eq!(out.find_edge(0, 1), Some(0));
    }

    #[test]
    fn completion_of_path_keeps_girth() {
        // P3 has deficiency 2 + 1 + 2 = 5; H = Petersen complement is 6-regular,
        // so use K_6 (5-regular, girth 3) and the 5-regular Clebsch graph (girth 4)
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let clebsch = build_pq(4).graph;
        let out = cubic_completion(&p3, &clebsch).unwrap();
        assert!(out.is_cubic());
        assert_eq!(out.n(), 48);
        assert!(out.girth().unwrap() >= 4);
        for c in 0..16 {
            assert!(out.find_edge(3 * c, 3 * c + 1).is_some());
            assert!(out.find_edge(3 * c + 1, 3 * c + 2).is_some());
        }
    }

    #[test]
    fn completion_rejects_wrong_regularity() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(cubic_completion(&p3, &build_cycle(5)).is_err());
    }
}
