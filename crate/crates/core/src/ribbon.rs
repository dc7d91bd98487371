//! Planar three-coloured ribbon graphs.
//!
//! A graph is a set of darts (half-edges) with a rotation σ (cyclic order at
//! each vertex) and an involution α (edges). Faces are the cycles of σ∘α.
//! External faces are labelled by the corners of the white vertices: the face
//! containing dart d_j of a white vertex (d_1 … d_N) carries label p_j, so the
//! edge of d_j separates p_j from p_{j+1}.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polylog::{li2, ln1p_over};
use crate::quad::QuadratureRule;

/// Relative tolerance of the quadrature doubling check.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Internal,
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Darts in counter-clockwise order.
    pub darts: Vec<usize>,
}

impl Vertex {
    pub fn internal(darts: [usize; 3]) -> Self {
        Vertex { kind: VertexKind::Internal, darts: darts.to_vec() }
    }

    pub fn external(darts: &[usize]) -> Self {
        Vertex { kind: VertexKind::External, darts: darts.to_vec() }
    }

    pub fn valence(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum FaceLabel {
    /// p^boundary_index, both zero-based.
    External { boundary: usize, index: usize },
    /// q_k, zero-based.
    Internal { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub label: FaceLabel,
    pub darts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RibbonGraph {
    pub vertices: Vec<Vertex>,
    /// Edge involution on darts.
    pub alpha: Vec<usize>,
    /// Rotation on darts.
    pub sigma: Vec<usize>,
    /// Colour of the edge carrying each dart, in 1..=3.
    pub colours: Vec<u8>,
    pub faces: Vec<Face>,
    #[serde(skip)]
    face_of: Vec<usize>,
}

/// Rotation, edges and faces without colour data.
#[derive(Debug, Clone)]
struct Map {
    vertices: Vec<Vertex>,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
}

impl Map {
    fn new(vertices: Vec<Vertex>, alpha: Vec<usize>) -> Result<Self> {
        let n = alpha.len();
        let mut sigma = vec![usize::MAX; n];
        for v in &vertices {
            if v.darts.is_empty() {
                return Err(Error::Parameter("vertex without darts".into()));
            }
            for (i, &d) in v.darts.iter().enumerate() {
                if d >= n || sigma[d] != usize::MAX {
                    return Err(Error::Parameter(format!("dart {d} missing or reused")));
                }
                sigma[d] = v.darts[(i + 1) % v.darts.len()];
            }
        }
        if sigma.contains(&usize::MAX) {
            return Err(Error::Parameter("dart not attached to a vertex".into()));
        }
        for (d, &e) in alpha.iter().enumerate() {
            if e >= n || e == d || alpha[e] != d {
                return Err(Error::Parameter(format!("alpha is not a fixed-point-free involution at {d}")));
            }
        }

        let mut face_of = vec![usize::MAX; n];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = cycles.len();
                cycle.push(d);
                d = sigma[alpha[d]];
            }
            cycles.push(cycle);
        }

        let mut labels: Vec<Option<FaceLabel>> = vec![None; cycles.len()];
        let externals = vertices.iter().filter(|v| v.kind == VertexKind::External);
        for (b, v) in externals.enumerate() {
            for (j, &d) in v.darts.iter().enumerate() {
                let f = face_of[d];
                if labels[f].is_some() {
                    return Err(Error::Parameter(format!("face {f} touches more than one external corner")));
                }
                labels[f] = Some(FaceLabel::External { boundary: b, index: j });
            }
        }
        let mut next = 0;
        let faces = cycles
            .into_iter()
            .zip(labels)
            .map(|(darts, label)| {
                let label = label.unwrap_or_else(|| {
                    next += 1;
                    FaceLabel::Internal { index: next - 1 }
                });
                Face { label, darts }
            })
            .collect();
        Ok(Map { vertices, alpha, sigma, faces, face_of })
    }

    fn is_connected(&self) -> bool {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.alpha[d], self.sigma[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    fn euler(&self) -> i64 {
        self.vertices.len() as i64 - (self.alpha.len() / 2) as i64 + self.faces.len() as i64
    }

    /// Relabelling of darts by discovery order from dart 0; equal codes mean
    /// isomorphic rooted maps.
    fn canonical_code(&self) -> Vec<(usize, usize)> {
        let n = self.alpha.len();
        let mut label = vec![usize::MAX; n];
        let mut order = vec![0];
        label[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for e in [self.alpha[d], self.sigma[d]] {
                if label[e] == usize::MAX {
                    label[e] = order.len();
                    order.push(e);
                }
            }
            i += 1;
        }
        order.iter().map(|&d| (label[self.alpha[d]], label[self.sigma[d]])).collect()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.alpha.len()).filter(|&d| d < self.alpha[d]).map(|d| (d, self.alpha[d])).collect()
    }

    fn colouring_valid(&self, colours: &[u8]) -> bool {
        self.vertices.iter().all(|v| match v.kind {
            VertexKind::External => true,
            VertexKind::Internal => {
                let mut seen = [false; 4];
                v.darts.len() == 3
                    && v.darts.iter().all(|&d| {
                        let c = colours[d] as usize;
                        (1..=3).contains(&c) && !std::mem::replace(&mut seen[c], true)
                    })
            }
        })
    }
}

impl RibbonGraph {
    /// Build and validate a graph. `colours` has one entry per dart and must
    /// agree on both darts of every edge.
    pub fn new(vertices: Vec<Vertex>, alpha: Vec<usize>, colours: Vec<u8>) -> Result<Self> {
        if colours.len() != alpha.len() {
            return Err(Error::Parameter("one colour per dart expected".into()));
        }
        let map = Map::new(vertices, alpha)?;
        for (d, &e) in map.alpha.iter().enumerate() {
            if colours[d] != colours[e] || !(1..=3).contains(&colours[d]) {
                return Err(Error::Parameter(format!("bad colour on edge of dart {d}")));
            }
        }
        if !map.colouring_valid(&colours) {
            return Err(Error::Parameter("internal vertex without three distinct colours".into()));
        }
        if !map.is_connected() || map.euler() != 2 {
            return Err(Error::Parameter("graph is not a connected planar map".into()));
        }
        Ok(Self::from_map(map, colours))
    }

    fn from_map(map: Map, colours: Vec<u8>) -> Self {
        RibbonGraph {
            vertices: map.vertices,
            alpha: map.alpha,
            sigma: map.sigma,
            colours,
            faces: map.faces,
            face_of: map.face_of,
        }
    }

    /// Power of λ, one per internal vertex.
    pub fn order(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Internal).count()
    }

    pub fn boundary_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::External).count()
    }

    pub fn external_face_count(&self) -> usize {
        self.faces.iter().filter(|f| matches!(f.label, FaceLabel::External { .. })).count()
    }

    pub fn internal_face_count(&self) -> usize {
        self.faces.len() - self.external_face_count()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    /// V − E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn satisfies_colour_rule(&self) -> bool {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Internal).all(|v| {
            let mut c: Vec<u8> = v.darts.iter().map(|&d| self.colours[d]).collect();
            c.sort_unstable();
            c == [1, 2, 3]
        })
    }

    /// Face labels on the two sides of every edge.
    pub fn edge_faces(&self) -> Vec<(FaceLabel, FaceLabel)> {
        (0..self.alpha.len())
            .filter(|&d| d < self.alpha[d])
            .map(|d| (self.faces[self.face_of[d]].label, self.faces[self.face_of[self.alpha[d]]].label))
            .collect()
    }

    fn external_slots(&self) -> Vec<FaceLabel> {
        let mut out: Vec<FaceLabel> = self
            .faces
            .iter()
            .map(|f| f.label)
            .filter(|l| matches!(l, FaceLabel::External { .. }))
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialises")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphClass {
    pub representative: RibbonGraph,
    pub multiplicity: usize,
}

/// Two-point classes at order λ^(2n) with both external edges coloured 1.
pub fn enumerate_2pt(n: usize) -> Result<Vec<GraphClass>> {
    enumerate_2pt_coloured(n, [1, 1])
}

/// Two-point classes with the given external colours. Colour combinations
/// the vertex rules forbid give an empty list.
pub fn enumerate_2pt_coloured(n: usize, external: [u8; 2]) -> Result<Vec<GraphClass>> {
    if !(1..=2).contains(&n) {
        return Err(Error::Parameter(format!("enumeration supports n in 1..=2, got {n}")));
    }
    if external.iter().any(|c| !(1..=3).contains(c)) {
        return Err(Error::Parameter("external colours must be in 1..=3".into()));
    }
    let black = 2 * n;
    let darts = 2 + 3 * black;
    let mut vertices = vec![Vertex::external(&[0, 1])];
    for k in 0..black {
        let b = 2 + 3 * k;
        vertices.push(Vertex::internal([b, b + 1, b + 2]));
    }
    let vertex_of: Vec<usize> = (0..darts).map(|d| if d < 2 { 0 } else { 1 + (d - 2) / 3 }).collect();

    let mut seen = HashSet::new();
    let mut maps = Vec::new();
    let mut alpha = vec![usize::MAX; darts];
    let mut visit = |alpha: &[usize]| {
        let Ok(map) = Map::new(vertices.clone(), alpha.to_vec()) else {
            return;
        };
        if map.is_connected() && map.euler() == 2 && seen.insert(map.canonical_code()) {
            maps.push(map);
        }
    };
    matchings(&mut alpha, &vertex_of, &mut visit);

    let mut classes = Vec::new();
    for map in maps {
        let (count, first) = count_colourings(&map, external);
        if let Some(colours) = first {
            classes.push(GraphClass {
                representative: RibbonGraph::from_map(map, colours),
                multiplicity: count,
            });
        }
    }
    classes.sort_by_key(|c| (c.representative.fourth_order_kind(), c.multiplicity));
    Ok(classes)
}

/// All perfect matchings, skipping loops at a single black vertex (a loop
/// puts one colour on two corners of the same vertex).
fn matchings(alpha: &mut [usize], vertex_of: &[usize], visit: &mut impl FnMut(&[usize])) {
    let Some(d) = alpha.iter().position(|&a| a == usize::MAX) else {
        visit(alpha);
        return;
    };
    for e in d + 1..alpha.len() {
        if alpha[e] != usize::MAX || vertex_of[d] == vertex_of[e] {
            continue;
        }
        alpha[d] = e;
        alpha[e] = d;
        matchings(alpha, vertex_of, visit);
        alpha[d] = usize::MAX;
        alpha[e] = usize::MAX;
    }
}

fn count_colourings(map: &Map, external: [u8; 2]) -> (usize, Option<Vec<u8>>) {
    let edges = map.edges();
    let mut colours = vec![0u8; map.alpha.len()];
    let mut free = Vec::new();
    for &(a, b) in &edges {
        let fixed = [a, b].iter().find(|&&d| d < 2).map(|&d| external[d]);
        match fixed {
            Some(c) => {
                colours[a] = c;
                colours[b] = c;
            }
            None => free.push((a, b)),
        }
    }
    let mut count = 0;
    let mut first = None;
    for code in 0..3usize.pow(free.len() as u32) {
        let mut k = code;
        for &(a, b) in &free {
            let c = (k % 3) as u8 + 1;
            k /= 3;
            colours[a] = c;
            colours[b] = c;
        }
        if map.colouring_valid(&colours) {
            count += 1;
            first.get_or_insert_with(|| colours.clone());
        }
    }
    (count, first)
}

/// The four two-point classes at order λ⁴.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FourthOrder {
    /// Vertex correction.
    Gamma1,
    /// Two bubbles in a chain.
    Gamma2,
    /// Self-energy insertion next to p1.
    Gamma3,
    /// Self-energy insertion next to p2.
    Gamma4,
}

impl FourthOrder {
    pub const ALL: [FourthOrder; 4] = [Self::Gamma1, Self::Gamma2, Self::Gamma3, Self::Gamma4];

    pub fn name(self) -> &'static str {
        match self {
            Self::Gamma1 => "Gamma1",
            Self::Gamma2 => "Gamma2",
            Self::Gamma3 => "Gamma3",
            Self::Gamma4 => "Gamma4",
        }
    }

    /// Expected number of colourings.
    pub fn multiplicity(self) -> usize {
        match self {
            Self::Gamma1 => 2,
            _ => 4,
        }
    }
}

impl RibbonGraph {
    /// Which λ⁴ two-point class this graph belongs to, read off its edge structure.
    pub fn fourth_order_kind(&self) -> Option<FourthOrder> {
        if self.order() != 4 || self.boundary_count() != 1 || self.external_face_count() != 2 {
            return None;
        }
        let p = |i| FaceLabel::External { boundary: 0, index: i };
        let pairs = self.edge_faces();
        let count = |a: FaceLabel, b: FaceLabel| {
            pairs.iter().filter(|&&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)).count()
        };
        let q = |k| FaceLabel::Internal { index: k };
        if count(p(0), p(1)) == 3 {
            return Some(FourthOrder::Gamma2);
        }
        let doubled = |i| (0..2).any(|k| count(p(i), q(k)) == 2);
        Some(if doubled(0) {
            FourthOrder::Gamma3
        } else if doubled(1) {
            FourthOrder::Gamma4
        } else {
            FourthOrder::Gamma1
        })
    }
}

/// Integrate the edge weights over all internal face labels. `externals`
/// lists the external labels ordered by boundary, then corner.
pub fn amplitude(g: &RibbonGraph, externals: &[f64], rule: &QuadratureRule) -> Result<f64> {
    let slots = g.external_slots();
    if externals.len() != slots.len() {
        return Err(Error::Parameter(format!(
            "graph has {} external faces, got {} labels",
            slots.len(),
            externals.len()
        )));
    }
    let ext = slots.len();
    let index = |l: FaceLabel| match l {
        FaceLabel::External { .. } => slots.iter().position(|&s| s == l).expect("external slot"),
        FaceLabel::Internal { index } => ext + index,
    };
    let edges: Vec<(usize, usize)> = g.edge_faces().into_iter().map(|(a, b)| (index(a), index(b))).collect();
    let depth = g.internal_face_count();

    let coarse = nested(&edges, externals, depth, rule)?;
    if depth == 0 {
        return Ok(coarse);
    }
    let fine = nested(&edges, externals, depth, &rule.doubled())?;
    let estimate = (fine - coarse).abs();
    let tolerance = AMPLITUDE_TOLERANCE * fine.abs();
    if estimate > tolerance {
        return Err(Error::NonConvergence { estimate, tolerance });
    }
    Ok(fine)
}

fn nested(edges: &[(usize, usize)], externals: &[f64], depth: usize, rule: &QuadratureRule) -> Result<f64> {
    fn go(edges: &[(usize, usize)], labels: &mut Vec<f64>, left: usize, rule: &QuadratureRule) -> Result<f64> {
        if left == 0 {
            return Ok(edges.iter().map(|&(a, b)| 1.0 / (1.0 + labels[a] + labels[b])).product());
        }
        let mut sum = 0.0;
        for (&q, &w) in rule.abscissae().iter().zip(rule.mapped_weights()) {
            labels.push(q);
            let v = go(edges, labels, left - 1, rule);
            labels.pop();
            sum += w * v?;
        }
        if !sum.is_finite() {
            return Err(Error::Parameter("amplitude is not finite".into()));
        }
        Ok(sum)
    }
    if depth == 0 {
        return go(edges, &mut externals.to_vec(), 0, rule);
    }
    // outermost integral in parallel
    let parts: Result<Vec<f64>> = rule
        .abscissae()
        .par_iter()
        .zip(rule.mapped_weights())
        .map(|(&q, &w)| {
            let mut labels = externals.to_vec();
            labels.push(q);
            Ok(w * go(edges, &mut labels, depth - 1, rule)?)
        })
        .collect();
    Ok(parts?.iter().sum())
}

/// Σ s(Γ)·amplitude(Γ) for two-point classes.
pub fn resum(classes: &[GraphClass], p1: f64, p2: f64, rule: &QuadratureRule) -> Result<f64> {
    if let Some(first) = classes.first() {
        if classes.iter().any(|c| c.representative.order() != first.representative.order()) {
            return Err(Error::Parameter("classes of mixed order".into()));
        }
    }
    let parts: Result<Vec<f64>> = classes
        .par_iter()
        .map(|c| Ok(c.multiplicity as f64 * amplitude(&c.representative, &[p1, p2], rule)?))
        .collect();
    Ok(parts?.iter().sum())
}

/// Closed-form amplitudes of the λ⁴ classes. Not defined on p1 = p2.
pub fn amplitude_closed(which: FourthOrder, p1: f64, p2: f64) -> Result<f64> {
    if p1 == p2 {
        return Err(Error::Pole { k: 0, p1, p2 });
    }
    let s = 1.0 + p1 + p2;
    let d = p1 - p2;
    let (l1, l2) = (p1.ln_1p(), p2.ln_1p());
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    let (li1, li2_) = (li2(-p1)?, li2(-p2)?);
    let (a1, a2) = (1.0 + 2.0 * p1, 1.0 + 2.0 * p2);
    let v = match which {
        FourthOrder::Gamma1 => {
            (-l1 * l1 / (d * d * a1) - l2 * l2 / (d * d * a2) - (z2 - 2.0 * li1) / (a1 * d * s)
                + (z2 - 2.0 * li2_) / (a2 * d * s)
                + 2.0 * l1 * l2 / (d * d * s))
                / (s * s)
        }
        FourthOrder::Gamma2 => {
            let r = l1 - l2;
            r * r / (d * d * s * s * s)
        }
        FourthOrder::Gamma3 => {
            let a = z2 - l1 * l1 - li1;
            (-li1 / (a1 * a1 * s) - a / (a1 * d * d) - a / (a1 * a1 * d) + (z2 - l2 * l1 - li2_) / (s * d * d)
                + ln1p_over(p1) / ((1.0 + p1) * a1 * d))
                / (s * s)
        }
        FourthOrder::Gamma4 => {
            let a = z2 - l2 * l2 - li2_;
            (-li2_ / (a2 * a2 * s) - a / (a2 * d * d) + a / (a2 * a2 * d) + (z2 - l2 * l1 - li1) / (s * d * d)
                - ln1p_over(p2) / ((1.0 + p2) * a2 * d))
                / (s * s)
        }
    };
    Ok(v)
}

/// Two one-valent boundaries joined through a bubble; no internal face.
pub fn worked_example_1() -> RibbonGraph {
    // darts: 0 on W1, 1 on W2, 2..5 on B1, 5..8 on B2
    let vertices = vec![
        Vertex::external(&[0]),
        Vertex::external(&[1]),
        Vertex::internal([2, 3, 4]),
        Vertex::internal([5, 6, 7]),
    ];
    let mut alpha = vec![0; 8];
    for (a, b) in [(0, 2), (1, 5), (3, 6), (4, 7)] {
        alpha[a] = b;
        alpha[b] = a;
    }
    let colours = vec![1, 1, 1, 2, 3, 1, 2, 3];
    RibbonGraph::new(vertices, alpha, colours).expect("valid example")
}

pub fn worked_example_1_closed(p1: f64, p2: f64) -> f64 {
    let s = 1.0 + p1 + p2;
    1.0 / (s * s * (1.0 + 2.0 * p1) * (1.0 + 2.0 * p2))
}

/// The order λ² two-point bubble.
pub fn worked_example_2() -> RibbonGraph {
    let vertices = vec![Vertex::external(&[0, 1]), Vertex::internal([2, 3, 4]), Vertex::internal([5, 6, 7])];
    let mut alpha = vec![0; 8];
    for (a, b) in [(0, 2), (1, 5), (3, 7), (4, 6)] {
        alpha[a] = b;
        alpha[b] = a;
    }
    let colours = vec![1, 1, 1, 2, 3, 1, 3, 2];
    RibbonGraph::new(vertices, alpha, colours).expect("valid example")
}

pub fn worked_example_2_closed(p1: f64, p2: f64) -> f64 {
    let s = 1.0 + p1 + p2;
    if p1 == p2 {
        return 1.0 / (s * s * (1.0 + p1));
    }
    (p1.ln_1p() - p2.ln_1p()) / (s * s * (p1 - p2))
}

/// Three-valent boundary with a triangle of internal vertices.
pub fn worked_example_3() -> RibbonGraph {
    // W: 0,1,2; B_k: 3+3k .. 5+3k
    let vertices = vec![
        Vertex::external(&[0, 1, 2]),
        Vertex::internal([3, 4, 5]),
        Vertex::internal([6, 7, 8]),
        Vertex::internal([9, 10, 11]),
    ];
    let mut alpha = vec![0; 12];
    for (a, b) in [(0, 3), (1, 6), (2, 9), (5, 7), (8, 10), (11, 4)] {
        alpha[a] = b;
        alpha[b] = a;
    }
    let mut colours = vec![0; 12];
    for (pair, c) in [((0, 3), 1), ((1, 6), 2), ((2, 9), 3), ((5, 7), 3), ((8, 10), 1), ((11, 4), 2)] {
        colours[pair.0] = c;
        colours[pair.1] = c;
    }
    RibbonGraph::new(vertices, alpha, colours).expect("valid example")
}

pub fn worked_example_3_closed(p1: f64, p2: f64, p3: f64) -> f64 {
    let (l1, l2, l3) = (p1.ln_1p(), p2.ln_1p(), p3.ln_1p());
    let num = l1 / ((p1 - p2) * (p3 - p1)) + l2 / ((p2 - p1) * (p3 - p2)) + l3 / ((p3 - p1) * (p2 - p3));
    num / ((1.0 + p1 + p2) * (1.0 + p2 + p3) * (1.0 + p1 + p3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_validation() {
        let bad_alpha = vec![1, 0, 3, 2, 5, 4, 7, 6];
        let vertices = vec![Vertex::external(&[0, 1]), Vertex::internal([2, 3, 4]), Vertex::internal([5, 6, 7])];
        assert!(RibbonGraph::new(vertices, bad_alpha, vec![1; 8]).is_err());
        let g = worked_example_2();
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.internal_face_count(), 1);
        assert!(g.satisfies_colour_rule());
    }

    #[test]
    fn example_face_structure() {
        let g1 = worked_example_1();
        assert_eq!((g1.boundary_count(), g1.external_face_count(), g1.internal_face_count()), (2, 2, 0));
        let g3 = worked_example_3();
        assert_eq!((g3.external_face_count(), g3.internal_face_count(), g3.order()), (3, 1, 3));
    }

    #[test]
    fn json_lists_faces() {
        let v: serde_json::Value = serde_json::from_str(&worked_example_2().to_json()).unwrap();
        assert_eq!(v["faces"].as_array().unwrap().len(), 3);
        assert_eq!(v["vertices"][0]["kind"], "external");
    }
}
