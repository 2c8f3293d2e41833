//! McKay quiver representations at points of two-dimensional torus orbits.
//!
//! The quiver has a vertex per character and arrows `a_i^ρ : ρ → ρχ_i`.
//! Unwrapped over `H = Z³/Z(1,1,1)`, drawn with `f1 = (1,0)`, `f2 = (0,1)`,
//! `f3 = (−1,−1)`, it tiles the torus `H_R/M′` by 2r triangles. At a point
//! of a two-dimensional orbit each triangle loses exactly one arrow, and
//! pairs of triangles sharing a lost arrow merge into a diamond.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{add, dot, sub};
use crate::chambers::ChamberState;
use crate::error::{invariant, Error, Result};
use crate::grouplat::GroupSpec;

/// Nonzero pattern of the universal representation on one orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportGraph {
    pub chi: [usize; 3],
    /// `present[ρ][i]` iff `u_i^ρ` is nonzero on the orbit.
    pub present: Vec<[bool; 3]>,
    /// Order of vanishing of `u_i^ρ` along the orbit's divisor.
    pub order: Vec<[i64; 3]>,
    /// Multiplication table, cached for walks.
    #[serde(skip)]
    mul: Vec<Vec<usize>>,
}

/// `C(ρ; i, j)` with `i < j`: arrows `a_i^ρ, a_j^{ρχi}, a_i^{ρχj}, a_j^ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diamond {
    pub rho: usize,
    pub i: usize,
    pub j: usize,
    /// The diagonal `a_k^{ρχiχj}` is absent.
    pub diagonal_absent: bool,
}

impl SupportGraph {
    fn step(&self, rho: usize, i: usize) -> usize {
        self.mul[rho][self.chi[i]]
    }

    pub fn order_of_group(&self) -> usize {
        self.present.len()
    }

    /// Head of an arrow.
    pub fn head(&self, rho: usize, i: usize) -> usize {
        self.step(rho, i)
    }

    /// Both triangles through `a_1^ρ` lose exactly one arrow, with order one.
    pub fn check_triangle_rule(&self) -> Result<()> {
        for rho in 0..self.order_of_group() {
            for (i, j, k) in [(0, 1, 2), (0, 2, 1)] {
                let a = self.step(rho, i);
                let b = self.step(a, j);
                let ords = [self.order[rho][i], self.order[a][j], self.order[b][k]];
                if ords.iter().sum::<i64>() != 1 || ords.iter().any(|&o| o < 0) {
                    return invariant(format!("triangle rule fails at character {rho}: orders {ords:?}"));
                }
            }
        }
        Ok(())
    }

    /// Commutativity closure of the support.
    pub fn check_closure(&self) -> Result<()> {
        for rho in 0..self.order_of_group() {
            for i in 0..3 {
                for j in 0..3 {
                    if i == j || !self.present[rho][i] || !self.present[self.step(rho, i)][j] {
                        continue;
                    }
                    if !self.present[rho][j] || !self.present[self.step(rho, j)][i] {
                        return invariant(format!("support is not closed at character {rho}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Absent arrows `(σ, k)`.
    pub fn absent(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, p) in self.present.iter().enumerate() {
            for k in 0..3 {
                if !p[k] {
                    out.push((s, k));
                }
            }
        }
        out
    }
}

/// Support graph of the orbit of the divisor `D_v`, read in the chart of
/// `triangle`, which must contain `v`.
pub fn orbit_rep(g: &GroupSpec, state: &ChamberState, triangle: usize, v: usize) -> Result<SupportGraph> {
    let fan = &state.fan;
    let tri = fan
        .triangles
        .get(triangle)
        .ok_or_else(|| Error::Precondition(format!("no triangle {triangle}")))?;
    if !tri.contains(&v) {
        return Err(Error::Precondition(format!("vertex {v} is not on triangle {triangle}")));
    }
    let chi = g.coordinate_characters();
    let n = g.order();
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect();
    let c = fan.vertices[v];
    let mut order = vec![[0i64; 3]; n];
    let mut present = vec![[false; 3]; n];
    for rho in 0..n {
        for i in 0..3 {
            let mut e = [0i64; 3];
            e[i] = 1;
            let m0 = state.taut.bundles[rho].gens[triangle];
            let m1 = state.taut.bundles[mul[rho][chi[i]]].gens[triangle];
            let ratio = sub(&add(&e, &m0), &m1);
            for &w in tri {
                let p = dot(&ratio, &fan.vertices[w]);
                if p < 0 || p % fan.r != 0 {
                    return invariant(format!("u_{}^{rho} is not regular on triangle {triangle}", i + 1));
                }
            }
            let p = dot(&ratio, &c) / fan.r;
            order[rho][i] = p;
            present[rho][i] = p == 0;
        }
    }
    Ok(SupportGraph { chi, present, order, mul })
}

/// Support graph of the orbit of `D_v` in the first chart containing it.
pub fn orbit_rep_at(g: &GroupSpec, state: &ChamberState, v: usize) -> Result<SupportGraph> {
    let t = state
        .fan
        .triangles
        .iter()
        .position(|t| t.contains(&v))
        .ok_or_else(|| Error::Precondition(format!("no triangle contains vertex {v}")))?;
    orbit_rep(g, state, t, v)
}

/// All cycles `C(ρ; i, j)` with four arrows present.
pub fn diamonds(gr: &SupportGraph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for rho in 0..gr.order_of_group() {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (a, b) = (gr.step(rho, i), gr.step(rho, j));
            if gr.present[rho][i] && gr.present[a][j] && gr.present[b][i] && gr.present[rho][j] {
                let top = gr.step(a, j);
                out.push(Diamond { rho, i, j, diagonal_absent: !gr.present[top][k] });
            }
        }
    }
    out
}

/// Each absent arrow is the diagonal of exactly one diamond and every
/// diamond has its diagonal absent, so the r diamonds tile the torus.
pub fn check_diamond_cover(gr: &SupportGraph) -> Result<()> {
    let ds = diamonds(gr);
    if ds.iter().any(|d| !d.diagonal_absent) {
        return invariant("a diamond has its diagonal present");
    }
    let mut diagonals: Vec<(usize, usize)> = ds
        .iter()
        .map(|d| {
            let k = 3 - d.i - d.j;
            (gr.step(gr.step(d.rho, d.i), d.j), k)
        })
        .collect();
    diagonals.sort();
    let mut absent = gr.absent();
    absent.sort();
    if diagonals != absent || ds.len() != gr.order_of_group() {
        return invariant(format!("{} diamonds against {} absent arrows", ds.len(), absent.len()));
    }
    Ok(())
}

/// Arrows of a diamond, as `(tail, i)`.
fn diamond_arrows(gr: &SupportGraph, d: &Diamond) -> [(usize, usize); 4] {
    [(d.rho, d.i), (gr.step(d.rho, d.i), d.j), (gr.step(d.rho, d.j), d.i), (d.rho, d.j)]
}

fn diamond_vertices(gr: &SupportGraph, d: &Diamond) -> [usize; 4] {
    let a = gr.step(d.rho, d.i);
    [d.rho, a, gr.step(a, d.j), gr.step(d.rho, d.j)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    /// 0/1 class of the subrepresentation R1 (the subsheaf S).
    pub r1: Vec<i64>,
    pub s_connected: bool,
    pub q_connected: bool,
}

fn connected(gr: &SupportGraph, members: &[bool]) -> bool {
    let n = members.len();
    let Some(start) = (0..n).find(|&v| members[v]) else {
        return false;
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        let mut nbrs = Vec::new();
        for i in 0..3 {
            if gr.present[v][i] {
                nbrs.push(gr.step(v, i));
            }
        }
        for u in 0..n {
            for i in 0..3 {
                if gr.present[u][i] && gr.step(u, i) == v {
                    nbrs.push(u);
                }
            }
        }
        for u in nbrs {
            if members[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).all(|v| !members[v] || seen[v])
}

/// Proper nonempty vertex sets with no present arrow leaving them.
pub fn subsheaf_subsets(gr: &SupportGraph) -> Vec<Split> {
    let n = gr.order_of_group();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let closed = (0..n).all(|v| !inside[v] || (0..3).all(|i| !gr.present[v][i] || inside[gr.step(v, i)]));
        if !closed {
            continue;
        }
        let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
        out.push(Split {
            r1: inside.iter().map(|&b| i64::from(b)).collect(),
            s_connected: connected(gr, &inside),
            q_connected: connected(gr, &outside),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandDecomposition {
    /// Diamonds with all four vertices in S, resp. Q.
    pub dom_s: Vec<Diamond>,
    pub dom_q: Vec<Diamond>,
    /// Band components, as lists of mixed diamonds.
    pub components: Vec<Vec<Diamond>>,
    pub ext1_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Sub,
    Quotient,
}

/// Band(Q, S) for the splitting with subrepresentation `r1`.
pub fn band(gr: &SupportGraph, r1: &[i64]) -> Result<BandDecomposition> {
    let n = gr.order_of_group();
    if r1.len() != n || r1.iter().any(|&x| x != 0 && x != 1) || r1.iter().all(|&x| x == r1[0]) {
        return Err(Error::Precondition("splitting must be a proper nonempty 0/1 class".into()));
    }
    let inside: Vec<bool> = r1.iter().map(|&x| x == 1).collect();
    for v in 0..n {
        for i in 0..3 {
            if inside[v] && gr.present[v][i] && !inside[gr.step(v, i)] {
                return Err(Error::Precondition(format!("arrow a_{}^{v} leaves the subrepresentation", i + 1)));
            }
        }
    }
    let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
    if !connected(gr, &inside) || !connected(gr, &outside) {
        return Err(Error::Precondition("non-simple splitting: a side is disconnected".into()));
    }
    let ds = diamonds(gr);
    let mut dom_s = Vec::new();
    let mut dom_q = Vec::new();
    let mut mixed = Vec::new();
    for d in ds {
        let vs = diamond_vertices(gr, &d);
        if vs.iter().all(|&v| inside[v]) {
            dom_s.push(d);
        } else if vs.iter().all(|&v| !inside[v]) {
            dom_q.push(d);
        } else {
            mixed.push(d);
        }
    }
    // Mixed diamonds are glued along crossing arrows, each of which borders
    // exactly two diamonds.
    let mut by_arrow: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, d) in mixed.iter().enumerate() {
        for (t, i) in diamond_arrows(gr, d) {
            if inside[t] != inside[gr.step(t, i)] {
                by_arrow.entry((t, i)).or_default().push(k);
            }
        }
    }
    let mut parent: Vec<usize> = (0..mixed.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for ks in by_arrow.values() {
        for w in ks.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut comps: BTreeMap<usize, Vec<Diamond>> = BTreeMap::new();
    for (k, d) in mixed.iter().enumerate() {
        let root = find(&mut parent, k);
        comps.entry(root).or_default().push(*d);
    }
    let components: Vec<Vec<Diamond>> = comps.into_values().collect();
    let ext1_dim = components.len();
    if ext1_dim > 2 {
        return invariant(format!("band has {ext1_dim} components"));
    }
    Ok(BandDecomposition { dom_s, dom_q, components, ext1_dim })
}

/// Euler characteristic `V − E + F` of one side's domain.
pub fn domain_euler(gr: &SupportGraph, r1: &[i64], side: Side, b: &BandDecomposition) -> i64 {
    let want = match side {
        Side::Sub => 1,
        Side::Quotient => 0,
    };
    let n = gr.order_of_group();
    let members: Vec<bool> = r1.iter().map(|&x| x == want).collect();
    let v = members.iter().filter(|&&m| m).count() as i64;
    let mut e = 0;
    for t in 0..n {
        for i in 0..3 {
            if gr.present[t][i] && members[t] && members[gr.step(t, i)] {
                e += 1;
            }
        }
    }
    let f = match side {
        Side::Sub => b.dom_s.len(),
        Side::Quotient => b.dom_q.len(),
    } as i64;
    v - e + f
}

/// The chosen side is rigid when its domain is simply connected. A proper
/// connected subcomplex of the torus is simply connected iff V − E + F = 1.
pub fn is_rigid(gr: &SupportGraph, r1: &[i64], side: Side) -> Result<bool> {
    let b = band(gr, r1)?;
    if b.ext1_dim != 1 {
        return Err(Error::Precondition(format!("rigidity needs ext1_dim = 1, got {}", b.ext1_dim)));
    }
    Ok(domain_euler(gr, r1, side, &b) == 1)
}

/// Lift of the quiver to `H` drawn over a window of the plane, with
/// diamonds of Dom_S and Dom_Q shaded.
pub fn to_svg(g: &GroupSpec, gr: &SupportGraph, r1: Option<&[i64]>, radius: i64) -> String {
    let unit = 40.0;
    let size = (2 * radius + 2) as f64 * unit;
    let pos = |p: i64, q: i64| ((p + radius + 1) as f64 * unit, size - (q + radius + 1) as f64 * unit);
    let char_at = |p: i64, q: i64| g.index_of_exponent(&[p.rem_euclid(g.r), q.rem_euclid(g.r), 0]);
    let f = [(1, 0), (0, 1), (-1, -1)];
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">"#);
    if let Some(r1) = r1 {
        let ds: BTreeSet<(usize, usize, usize)> = diamonds(gr).iter().map(|d| (d.rho, d.i, d.j)).collect();
        for p in -radius..=radius {
            for q in -radius..=radius {
                let rho = char_at(p, q);
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    if !ds.contains(&(rho, i, j)) {
                        continue;
                    }
                    let d = Diamond { rho, i, j, diagonal_absent: true };
                    let vs = diamond_vertices(gr, &d);
                    let colour = if vs.iter().all(|&v| r1[v] == 1) {
                        "#9ecae1"
                    } else if vs.iter().all(|&v| r1[v] == 0) {
                        "#fdae6b"
                    } else {
                        continue;
                    };
                    let pts = [(p, q), (p + f[i].0, q + f[i].1), (p + f[i].0 + f[j].0, q + f[i].1 + f[j].1), (p + f[j].0, q + f[j].1)];
                    let path: Vec<String> = pts.iter().map(|&(a, b)| {
                        let (x, y) = pos(a, b);
                        format!("{x},{y}")
                    }).collect();
                    let _ = writeln!(s, r#"<polygon points="{}" fill="{colour}" opacity="0.6"/>"#, path.join(" "));
                }
            }
        }
    }
    for p in -radius..=radius {
        for q in -radius..=radius {
            let rho = char_at(p, q);
            let (x, y) = pos(p, q);
            for i in 0..3 {
                if gr.present[rho][i] {
                    let (x2, y2) = pos(p + f[i].0, q + f[i].1);
                    let _ = writeln!(s, r#"<line x1="{x}" y1="{y}" x2="{x2}" y2="{y2}" stroke="black"/>"#);
                }
            }
            let fill = if rho == 0 { "white" } else { "black" };
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="black"/>"#);
            let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10">{}</text>"#, x + 5.0, y - 5.0, g.label(rho));
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::ghilb_state;
    use crate::grouplat::parse_group;

    #[test]
    fn p2_orbit() {
        let g = parse_group("1/3(1,1,1)").unwrap();
        let (_, st) = ghilb_state(&g).unwrap();
        let v = st.fan.interior_vertices()[0];
        let gr = orbit_rep_at(&g, &st, v).unwrap();
        gr.check_triangle_rule().unwrap();
        gr.check_closure().unwrap();
        check_diamond_cover(&gr).unwrap();
        assert_eq!(diamonds(&gr).len(), 3);
        // θ2 > 0 is a wall with subsheaf ρ2 supported on P².
        let b = band(&gr, &[0, 0, 1]).unwrap();
        assert_eq!(b.ext1_dim, 1);
        assert!(is_rigid(&gr, &[0, 0, 1], Side::Sub).unwrap());
    }

    #[test]
    fn orbit_is_chart_independent() {
        let g = parse_group("1/6(1,2,3)").unwrap();
        let (_, st) = ghilb_state(&g).unwrap();
        for v in 0..st.fan.vertices.len() {
            let charts: Vec<usize> = (0..st.fan.triangles.len()).filter(|&t| st.fan.triangles[t].contains(&v)).collect();
            let first = orbit_rep(&g, &st, charts[0], v).unwrap();
            for &t in &charts[1..] {
                assert_eq!(orbit_rep(&g, &st, t, v).unwrap().present, first.present);
            }
        }
    }

    #[test]
    fn compact_surface_of_1_6_123() {
        let g = parse_group("1/6(1,2,3)").unwrap();
        let (_, st) = ghilb_state(&g).unwrap();
        let v = st.fan.interior_vertices();
        assert_eq!(v.len(), 1);
        let gr = orbit_rep_at(&g, &st, v[0]).unwrap();
        check_diamond_cover(&gr).unwrap();
        let q01 = [0, 0, 1, 1, 1, 1];
        let b = band(&gr, &q01).unwrap();
        assert_eq!(b.ext1_dim, 1);
        assert!(is_rigid(&gr, &q01, Side::Quotient).unwrap());
        // Quotients here are initial segments ρ0..ρk, so {ρ0, ρ1, ρ3} is
        // not one; the two-component band belongs to ρ0+ρ1+ρ2.
        assert!(matches!(band(&gr, &[0, 0, 1, 0, 1, 1]), Err(Error::Precondition(_))));
        assert_eq!(band(&gr, &[0, 0, 0, 1, 1, 1]).unwrap().ext1_dim, 2);
    }
}
