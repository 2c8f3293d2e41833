//! Basic triangulations of the junior simplex and the toric geometry of the
//! corresponding crepant resolutions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{add, cross, det3, dot, primitive, solve_pair, V3};
use crate::error::{Error, Result};
use crate::grouplat::{Exponent, GroupSpec, LatticePointN};

/// Default bound on the number of fans visited by [`flip_reachable_fans`].
pub const DEFAULT_MAX_FANS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    /// Endpoints, `a < b`.
    pub a: usize,
    pub b: usize,
    /// One or two adjacent triangles.
    pub tris: Vec<usize>,
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.tris.len() == 2
    }
}

/// A basic triangulation of Δ, stored canonically: vertices sorted, each
/// triangle a sorted index triple, triangles sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    pub r: i64,
    pub vertices: Vec<LatticePointN>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(skip)]
    edges: Vec<Edge>,
}

/// The fan of a compact toric divisor D_v: rays in cyclic order and the
/// self-intersection of each toric curve on the surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSurface {
    pub center: usize,
    pub rays: Vec<usize>,
    pub self_intersections: Vec<i64>,
}

impl Triangulation {
    /// Build and validate a triangulation from point triples.
    pub fn from_triangles(r: i64, tris: &[[LatticePointN; 3]]) -> Result<Self> {
        let t = Self::build(r, tris);
        t.validate()?;
        Ok(t)
    }

    fn build(r: i64, tris: &[[LatticePointN; 3]]) -> Self {
        let set: BTreeSet<LatticePointN> = tris.iter().flatten().copied().collect();
        let vertices: Vec<LatticePointN> = set.into_iter().collect();
        let pos = |p: &LatticePointN| vertices.binary_search(p).unwrap();
        let mut triangles: Vec<[usize; 3]> = tris
            .iter()
            .map(|t| {
                let mut ix = [pos(&t[0]), pos(&t[1]), pos(&t[2])];
                ix.sort();
                ix
            })
            .collect();
        triangles.sort();
        let mut t = Triangulation { r, vertices, triangles, edges: Vec::new() };
        t.edges = t.compute_edges();
        t
    }

    fn compute_edges(&self) -> Vec<Edge> {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, t) in self.triangles.iter().enumerate() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                map.entry((t[i], t[j])).or_default().push(k);
            }
        }
        map.into_iter().map(|((a, b), tris)| Edge { a, b, tris }).collect()
    }

    /// Check unimodularity, the triangle count and the tiling of Δ.
    pub fn validate(&self) -> Result<()> {
        let r = self.r;
        let bad = |m: String| Err(Error::Invariant(format!("invalid triangulation: {m}")));
        if self.triangles.len() as i64 != r {
            return bad(format!("{} triangles, expected {r}", self.triangles.len()));
        }
        for p in &self.vertices {
            if p.iter().any(|&x| x < 0) || p.iter().sum::<i64>() != r {
                return bad(format!("vertex {p:?} not in the junior simplex"));
            }
        }
        for t in &self.triangles {
            let d = det3(&self.vertices[t[0]], &self.vertices[t[1]], &self.vertices[t[2]]);
            if d.abs() != r * r {
                return bad(format!("triangle {t:?} is not basic"));
            }
        }
        for e in &self.edges {
            let (p, q) = (self.vertices[e.a], self.vertices[e.b]);
            let on_boundary = (0..3).any(|k| p[k] == 0 && q[k] == 0);
            match (e.tris.len(), on_boundary) {
                (1, true) => {}
                (2, false) => {
                    let (v1, v2) = self.opposite(e);
                    let n = cross(&p, &q);
                    let s1 = dot(&n, &self.vertices[v1]).signum();
                    let s2 = dot(&n, &self.vertices[v2]).signum();
                    if s1 * s2 >= 0 {
                        return bad(format!("triangles overlap along edge ({},{})", e.a, e.b));
                    }
                }
                _ => return bad(format!("edge ({},{}) is not manifold", e.a, e.b)),
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&key)).ok()
    }

    pub fn vertex_index(&self, p: &LatticePointN) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn is_interior_vertex(&self, v: usize) -> bool {
        self.vertices[v].iter().all(|&x| x > 0)
    }

    pub fn is_corner(&self, v: usize) -> bool {
        self.vertices[v].iter().filter(|&&x| x == 0).count() == 2
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_interior_vertex(v)).collect()
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.edges[k].is_interior()).collect()
    }

    /// Third vertices of the two triangles on an interior edge.
    pub fn opposite(&self, e: &Edge) -> (usize, usize) {
        let third = |t: usize| {
            *self.triangles[t].iter().find(|&&x| x != e.a && x != e.b).unwrap()
        };
        (third(e.tris[0]), third(e.tris[1]))
    }

    fn interior_edge(&self, e: usize) -> Result<&Edge> {
        let edge = self
            .edges
            .get(e)
            .ok_or_else(|| Error::Degenerate(format!("no edge {e}")))?;
        if !edge.is_interior() {
            return Err(Error::Degenerate(format!("edge ({},{}) lies on the boundary", edge.a, edge.b)));
        }
        Ok(edge)
    }

    /// Coefficients `(a, b)` with `v1 + v2 + a·w1 + b·w2 = 0`, where
    /// `w1, w2` are the endpoints `e.a, e.b` in that order.
    pub fn normal_coefficients(&self, e: usize) -> Result<(i64, i64)> {
        let edge = self.interior_edge(e)?;
        let (v1, v2) = self.opposite(edge);
        let p = |i: usize| &self.vertices[i];
        relation(p(v1), p(v2), p(edge.a), p(edge.b))
            .ok_or_else(|| Error::Invariant("normal bundle relation has no integral solution".into()))
    }

    /// Normal bundle degrees of the toric curve of an interior edge, `a ≤ b`.
    pub fn curve_degrees(&self, e: usize) -> Result<(i64, i64)> {
        let (a, b) = self.normal_coefficients(e)?;
        Ok((a.min(b), a.max(b)))
    }

    /// Flop of a (−1,−1)-curve: exchange the diagonals of its quadrilateral.
    pub fn flip(&self, e: usize) -> Result<Triangulation> {
        let deg = self.curve_degrees(e)?;
        if deg != (-1, -1) {
            return Err(Error::InvalidFlip(format!("edge has normal degrees {deg:?}, need (-1,-1)")));
        }
        let edge = &self.edges[e];
        let (v1, v2) = self.opposite(edge);
        let mut tris: Vec<[LatticePointN; 3]> = Vec::with_capacity(self.triangles.len());
        for (k, t) in self.triangles.iter().enumerate() {
            if !edge.tris.contains(&k) {
                tris.push(t.map(|i| self.vertices[i]));
            }
        }
        let p = |i: usize| self.vertices[i];
        tris.push([p(v1), p(v2), p(edge.a)]);
        tris.push([p(v1), p(v2), p(edge.b)]);
        let out = Self::build(self.r, &tris);
        out.validate()?;
        Ok(out)
    }

    /// The primitive invariant ratio `m1 : m2` cutting out the line through an
    /// interior edge, with its character.
    pub fn line_ratio(&self, e: usize, g: &GroupSpec) -> Result<(Exponent, Exponent, usize)> {
        let edge = self.interior_edge(e)?;
        let u0 = primitive(&cross(&self.vertices[edge.a], &self.vertices[edge.b]));
        let k = (1..=g.r)
            .find(|&k| g.index_of_exponent(&u0.map(|x| k * x)) == 0)
            .ok_or_else(|| Error::Invariant("no invariant multiple".into()))?;
        let u = u0.map(|x| k * x);
        let pos = u.map(|x| x.max(0));
        let neg = u.map(|x| (-x).max(0));
        // Pure powers first, then the lexicographically larger side.
        let support = |m: &Exponent| m.iter().filter(|&&x| x > 0).count();
        let (m1, m2) = if (support(&pos), std::cmp::Reverse(pos)) <= (support(&neg), std::cmp::Reverse(neg)) {
            (pos, neg)
        } else {
            (neg, pos)
        };
        Ok((m1, m2, g.index_of_exponent(&m1)))
    }

    /// Vertices adjacent to `v`, in cyclic order around it.
    pub fn neighbors_cyclic(&self, v: usize) -> Vec<usize> {
        let c = self.vertices[v];
        let mut nb: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        let dir = |u: usize| {
            let p = self.vertices[u];
            (p[0] - c[0], p[1] - c[1])
        };
        nb.sort_by(|&p, &q| {
            let (a, b) = (dir(p), dir(q));
            let half = |d: (i64, i64)| if d.1 > 0 || (d.1 == 0 && d.0 > 0) { 0 } else { 1 };
            half(a)
                .cmp(&half(b))
                .then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
        });
        nb
    }

    /// Fan of the compact surface D_v with self-intersection numbers.
    pub fn star_surface(&self, v: usize) -> Result<StarSurface> {
        if !self.is_interior_vertex(v) {
            return Err(Error::Precondition(format!("vertex {v} is not interior")));
        }
        let rays = self.neighbors_cyclic(v);
        let n = rays.len();
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let (prev, cur, next) = (rays[(i + n - 1) % n], rays[i], rays[(i + 1) % n]);
            let s = add(&self.vertices[prev], &self.vertices[next]);
            let target = [-s[0], -s[1], -s[2]];
            let (_, bi) = solve_pair(&self.vertices[v], &self.vertices[cur], &target)
                .ok_or_else(|| Error::Invariant("star relation has no integral solution".into()))?;
            b.push(bi);
        }
        Ok(StarSurface { center: v, rays, self_intersections: b })
    }

    /// SVG drawing of Δ with labelled vertices and interior edges.
    pub fn to_svg(&self, vertex_labels: &[String], edge_labels: &BTreeMap<usize, String>) -> String {
        let (w, h, pad) = (600.0f64, 520.0f64, 40.0f64);
        let r = self.r as f64;
        let xy = |p: &LatticePointN| {
            let x = pad + w * (p[1] as f64 + p[0] as f64 / 2.0) / r;
            let y = pad + h - h * p[0] as f64 / r;
            (x, y)
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">"#,
            w + 2.0 * pad,
            h + 2.0 * pad
        );
        for e in &self.edges {
            let (a, b) = (xy(&self.vertices[e.a]), xy(&self.vertices[e.b]));
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.5"/>"#,
                a.0,
                a.1,
                b.0,
                b.1,
                if e.is_interior() { "gray" } else { "black" }
            );
        }
        for (k, label) in edge_labels {
            let e = &self.edges[*k];
            let (a, b) = (xy(&self.vertices[e.a]), xy(&self.vertices[e.b]));
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="darkred" text-anchor="middle">{}</text>"#,
                (a.0 + b.0) / 2.0,
                (a.1 + b.1) / 2.0 - 3.0,
                escape(label)
            );
        }
        for (v, p) in self.vertices.iter().enumerate() {
            let (x, y) = xy(p);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
            let label = vertex_labels.get(v).cloned().unwrap_or_else(|| v.to_string());
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="navy">{}</text>"#,
                x + 6.0,
                y - 6.0,
                escape(&label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn relation(v1: &V3, v2: &V3, w1: &V3, w2: &V3) -> Option<(i64, i64)> {
    let s = add(v1, v2);
    solve_pair(w1, w2, &[-s[0], -s[1], -s[2]])
}

/// Normal bundle degrees `(a, b)`, `a ≤ b`, of the curve `w1 w2` between
/// cones over `(w1, w2, v1)` and `(w1, w2, v2)`.
pub fn normal_degrees(v1: &V3, v2: &V3, w1: &V3, w2: &V3) -> Option<(i64, i64)> {
    relation(v1, v2, w1, w2).map(|(a, b)| (a.min(b), a.max(b)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// All triangulations reachable from `t0` by flops of (−1,−1)-curves.
pub fn flip_reachable_fans(t0: &Triangulation, max_fans: usize) -> Result<Vec<Triangulation>> {
    let mut seen: BTreeSet<Vec<[usize; 3]>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(t0.triangles.clone());
    queue.push_back(t0.clone());
    while let Some(t) = queue.pop_front() {
        for e in t.interior_edges() {
            if t.curve_degrees(e)? == (-1, -1) {
                let t2 = t.flip(e)?;
                if seen.insert(t2.triangles.clone()) {
                    if seen.len() > max_fans {
                        return Err(Error::ResourceLimit(format!("more than {max_fans} fans")));
                    }
                    queue.push_back(t2);
                }
            }
        }
        out.push(t);
    }
    out.sort_by(|a, b| a.triangles.cmp(&b.triangles));
    Ok(out)
}
