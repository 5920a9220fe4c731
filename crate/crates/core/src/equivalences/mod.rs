//! The equivalent certificate forms and the conversions between them.
//!
//! For a graph `G` and `k >= 1` the following are interchangeable:
//!
//! 1. `2k` pairwise disjoint cut complements,
//! 2. `2k + 1` pairwise disjoint cut complements covering `E(G)`,
//! 3. a homomorphism `G -> PQ_{2k}`,
//! 4. a cut-continuous map `E(G) -> E(C_{2k+1})`.
//!
//! Cut complements are stored through their sides: `S_i = E ∖ δ(U_i)`.
//! Homomorphisms into `PQ_{2k}` are stored as `(2k+1)`-bit vectors, where two
//! vectors are adjacent when they agree in exactly one coordinate.

mod format;

pub use format::{parse_certificates, Certificate};

use std::collections::HashSet;

use thiserror::Error;

use crate::graphs::{build_cycle, cut_of, is_cut, EdgeSet, Graph, VertexSet};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("edge {edge} ({u}, {v}) lies in complements {i} and {j}")]
    Overlap {
        edge: usize,
        u: usize,
        v: usize,
        i: usize,
        j: usize,
    },
    #[error("edge {edge} ({u}, {v}) is in no complement")]
    Uncovered { edge: usize, u: usize, v: usize },
    #[error("edge {edge} ({u}, {v}) is not mapped to an edge")]
    NotAnEdge { edge: usize, u: usize, v: usize },
    #[error("preimage of the cut at target vertex {vertex} is not a cut")]
    PreimageNotCut { vertex: usize },
    #[error("set {index} is not a cut complement")]
    NotCutComplement { index: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Cut complements `S_i = E ∖ δ(U_i)` given by their sides `U_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub sets: Vec<VertexSet>,
}

impl Packing {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        Packing { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn complements(&self, g: &Graph) -> Vec<EdgeSet> {
        self.sets
            .iter()
            .map(|u| {
                let mut s = cut_of(g, u);
                s.toggle_range(..);
                s
            })
            .collect()
    }

    /// Index of the complement containing each edge (`None` if uncovered).
    fn owners(&self, g: &Graph) -> Result<Vec<Option<usize>>, CertError> {
        for (i, u) in self.sets.iter().enumerate() {
            if u.len() != g.n() {
                return Err(CertError::Size(format!(
                    "set {} has universe {} but the graph has {} vertices",
                    i + 1,
                    u.len(),
                    g.n()
                )));
            }
        }
        let mut owner = vec![None; g.m()];
        for (i, s) in self.complements(g).iter().enumerate() {
            for e in s.ones() {
                if let Some(j) = owner[e] {
                    let (u, v) = g.endpoints(e);
                    return Err(CertError::Overlap {
                        edge: e,
                        u,
                        v,
                        i: j + 1,
                        j: i + 1,
                    });
                }
                owner[e] = Some(i);
            }
        }
        Ok(owner)
    }
}

/// Pairwise disjointness of the complements; with `covering` also that they
/// cover every edge.
pub fn verify_packing(g: &Graph, p: &Packing, covering: bool) -> Result<(), CertError> {
    let owner = p.owners(g)?;
    if covering {
        if let Some(e) = owner.iter().position(|o| o.is_none()) {
            let (u, v) = g.endpoints(e);
            return Err(CertError::Uncovered { edge: e, u, v });
        }
    }
    Ok(())
}

/// A map `V(G) -> H_bits` given by bit vectors; coordinate `i` is bit `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub bits: usize,
    pub vectors: Vec<u32>,
}

impl Homomorphism {
    pub fn full(&self) -> u32 {
        (1u32 << self.bits) - 1
    }

    /// The coordinate in which the images of `u` and `v` agree, if exactly one.
    pub fn agreement(&self, u: usize, v: usize) -> Option<usize> {
        let same = !(self.vectors[u] ^ self.vectors[v]) & self.full();
        (same.count_ones() == 1).then(|| same.trailing_zeros() as usize)
    }

    /// Images with odd-weight vectors complemented, i.e. vertices of `PQ_{bits-1}`.
    pub fn canonical(&self) -> Homomorphism {
        let full = self.full();
        Homomorphism {
            bits: self.bits,
            vectors: self
                .vectors
                .iter()
                .map(|&x| if x.count_ones() % 2 == 1 { x ^ full } else { x })
                .collect(),
        }
    }
}

/// Every edge of `g` goes to vectors agreeing in exactly one coordinate.
pub fn verify_pq_homomorphism(g: &Graph, f: &Homomorphism) -> Result<(), CertError> {
    if f.vectors.len() != g.n() {
        return Err(CertError::Size(format!(
            "{} images for {} vertices",
            f.vectors.len(),
            g.n()
        )));
    }
    if f.bits.is_multiple_of(2) || !(1..=31).contains(&f.bits) {
        return Err(CertError::Size(format!("{} coordinates; expected an odd number", f.bits)));
    }
    if let Some(v) = f.vectors.iter().position(|&x| x > f.full()) {
        return Err(CertError::Size(format!("image of vertex {v} has more than {} bits", f.bits)));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if f.agreement(u, v).is_none() {
            return Err(CertError::NotAnEdge { edge: e, u, v });
        }
    }
    Ok(())
}

/// A vertex map `g -> target` sends every edge to an edge.
pub fn verify_homomorphism(g: &Graph, target: &Graph, map: &[usize]) -> Result<(), CertError> {
    if map.len() != g.n() {
        return Err(CertError::Size(format!("{} images for {} vertices", map.len(), g.n())));
    }
    if let Some(v) = map.iter().position(|&x| x >= target.n()) {
        return Err(CertError::Size(format!("image of vertex {v} is not a target vertex")));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if target.find_edge(map[u], map[v]).is_none() {
            return Err(CertError::NotAnEdge { edge: e, u, v });
        }
    }
    Ok(())
}

/// The edge map `f♯(uv) = f(u)f(v)` of a homomorphism.
pub fn induced_edge_map(g: &Graph, target: &Graph, map: &[usize]) -> Result<Vec<usize>, CertError> {
    verify_homomorphism(g, target, map)?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| target.find_edge(map[u], map[v]).expect("verified"))
        .collect())
}

/// An edge map into `C_len`; edge `i` of the cycle joins `i` and `i + 1 mod len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutContinuous {
    pub len: usize,
    pub map: Vec<usize>,
}

impl CutContinuous {
    pub fn target(&self) -> Graph {
        build_cycle(self.len)
    }
}

fn check_edge_map(g: &Graph, target: &Graph, map: &[usize]) -> Result<(), CertError> {
    if map.len() != g.m() {
        return Err(CertError::Size(format!("{} images for {} edges", map.len(), g.m())));
    }
    if let Some(e) = map.iter().position(|&x| x >= target.m()) {
        return Err(CertError::Size(format!("image of edge {e} is not a target edge")));
    }
    Ok(())
}

fn preimage(g: &Graph, map: &[usize], s: &EdgeSet) -> EdgeSet {
    let mut out = g.empty_edge_set();
    for (e, &x) in map.iter().enumerate() {
        if s.contains(x) {
            out.insert(e);
        }
    }
    out
}

/// Preimages of all cuts are cuts. Cuts are generated under `Δ` by the
/// vertex stars `δ({w})`, and preimages commute with `Δ`, so checking the
/// stars suffices.
pub fn verify_cut_continuous(g: &Graph, target: &Graph, map: &[usize]) -> Result<(), CertError> {
    check_edge_map(g, target, map)?;
    for w in 0..target.n() {
        let mut star = target.empty_vertex_set();
        star.insert(w);
        if !is_cut(g, &preimage(g, map, &cut_of(target, &star))).is_cut() {
            return Err(CertError::PreimageNotCut { vertex: w });
        }
    }
    Ok(())
}

/// The definition itself: every one of the `2^|V(target)|` cuts.
pub fn verify_cut_continuous_brute(g: &Graph, target: &Graph, map: &[usize]) -> bool {
    if check_edge_map(g, target, map).is_err() {
        return false;
    }
    assert!(target.n() <= 20, "brute force limited to small targets");
    (0..1u64 << target.n()).all(|code| {
        let mut side = target.empty_vertex_set();
        for w in 0..target.n() {
            if code >> w & 1 == 1 {
                side.insert(w);
            }
        }
        is_cut(g, &preimage(g, map, &cut_of(target, &side))).is_cut()
    })
}

/// Cut-continuous map into `C_len`.
pub fn verify_cut_continuous_cycle(g: &Graph, c: &CutContinuous) -> Result<(), CertError> {
    if c.len < 3 || c.len.is_multiple_of(2) {
        return Err(CertError::Size(format!("target cycle length {} must be odd and >= 3", c.len)));
    }
    verify_cut_continuous(g, &c.target(), &c.map)
}

/// Appends `U_{2k+1} = Δ U_i`, whose complement is the set of edges left
/// uncovered by the `2k` given complements.
pub fn conv_1_to_2(g: &Graph, p: &Packing) -> Result<Packing, CertError> {
    if p.is_empty() || p.len() % 2 == 1 {
        return Err(CertError::Size(format!("expected an even, nonzero number of sets, got {}", p.len())));
    }
    verify_packing(g, p, false)?;
    let mut last = g.empty_vertex_set();
    for u in &p.sets {
        last.symmetric_difference_with(u);
    }
    let mut sets = p.sets.clone();
    sets.push(last);
    Ok(Packing::new(sets))
}

/// `x^v_i = [v ∈ U_i]`, canonicalized into the even-weight component.
pub fn conv_2_to_3(g: &Graph, p: &Packing) -> Result<Homomorphism, CertError> {
    if p.len().is_multiple_of(2) || p.len() > 31 {
        return Err(CertError::Size(format!("expected an odd number of sets, got {}", p.len())));
    }
    verify_packing(g, p, true)?;
    let vectors = (0..g.n())
        .map(|v| {
            p.sets
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, u)| acc | (u.contains(v) as u32) << i)
        })
        .collect();
    let f = Homomorphism { bits: p.len(), vectors }.canonical();
    verify_pq_homomorphism(g, &f)?;
    Ok(f)
}

/// `g(uv)` is the cycle edge indexed by the one coordinate where the images
/// of `u` and `v` agree.
pub fn conv_3_to_4(g: &Graph, f: &Homomorphism) -> Result<CutContinuous, CertError> {
    verify_pq_homomorphism(g, f)?;
    let map = g
        .edges()
        .iter()
        .map(|&(u, v)| f.agreement(u, v).expect("verified"))
        .collect();
    Ok(CutContinuous { len: f.bits, map })
}

/// The preimages of the cycle edges, with sides recovered by [`is_cut`].
pub fn conv_4_to_1(g: &Graph, c: &CutContinuous) -> Result<Packing, CertError> {
    verify_cut_continuous_cycle(g, c)?;
    let mut sets = Vec::with_capacity(c.len);
    for i in 0..c.len {
        let mut rest = g.empty_edge_set();
        for (e, &x) in c.map.iter().enumerate() {
            if x != i {
                rest.insert(e);
            }
        }
        let u = is_cut(g, &rest)
            .witness()
            .ok_or(CertError::NotCutComplement { index: i + 1 })?;
        sets.push(u);
    }
    let p = Packing::new(sets);
    verify_packing(g, &p, true)?;
    Ok(p)
}

/// Outcome of [`check_pq_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqIso {
    pub vertices: usize,
    pub edges: usize,
    /// `map[x]` is the antipodal class (by smaller representative) of the
    /// even vector `x`; indexed by even vectors only.
    pub map: Vec<(u32, u32)>,
}

/// Builds `Q_{2k+1}` modulo antipodality directly and checks that sending an
/// even vector to its antipodal class is an isomorphism from the even part
/// of `H_{2k+1}`. Also checks that complementation maps the even part of
/// `H_{2k+1}` onto the odd part.
pub fn check_pq_iso(k: usize) -> Result<PqIso, CertError> {
    if !(1..=7).contains(&k) {
        return Err(CertError::Invalid(format!("k = {k} outside 1..=7")));
    }
    let bits = 2 * k + 1;
    let full = (1u32 << bits) - 1;
    let class = |x: u32| x.min(x ^ full);
    // quotient of the hypercube
    let mut q_edges: HashSet<(u32, u32)> = HashSet::new();
    for x in 0..=full {
        for i in 0..bits {
            let (a, b) = (class(x), class(x ^ 1 << i));
            if a != b {
                q_edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let q_vertices: HashSet<u32> = (0..=full).map(class).collect();
    // even part of H_{2k+1}
    let even: Vec<u32> = (0..=full).filter(|x| x.count_ones() % 2 == 0).collect();
    let adjacent_h = |x: u32, y: u32| (!(x ^ y) & full).count_ones() == 1;
    let mut h_edges = Vec::new();
    for (i, &x) in even.iter().enumerate() {
        for &y in &even[i + 1..] {
            if adjacent_h(x, y) {
                h_edges.push((x, y));
            }
        }
    }
    let image: HashSet<u32> = even.iter().map(|&x| class(x)).collect();
    if image.len() != even.len() || image != q_vertices {
        return Err(CertError::Invalid("class map is not a bijection".into()));
    }
    for &(x, y) in &h_edges {
        let (a, b) = (class(x), class(y));
        if !q_edges.contains(&(a.min(b), a.max(b))) {
            return Err(CertError::Invalid(format!("edge {x:b}-{y:b} is not preserved")));
        }
    }
    if h_edges.len() != q_edges.len() {
        return Err(CertError::Invalid(format!(
            "{} edges against {} in the quotient",
            h_edges.len(),
            q_edges.len()
        )));
    }
    for &(x, y) in &h_edges {
        let (cx, cy) = (x ^ full, y ^ full);
        if cx.count_ones() % 2 == 0 || !adjacent_h(cx, cy) {
            return Err(CertError::Invalid("complementation does not reach the odd part".into()));
        }
    }
    Ok(PqIso {
        vertices: even.len(),
        edges: h_edges.len(),
        map: even.iter().map(|&x| (x, class(x))).collect(),
    })
}
