//! Nakamura G-graphs, their cones in N_R and the G-Hilb fan.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{add, cross, dot, is_zero, primitive, V3};
use crate::error::{invariant, Result};
use crate::fan::Triangulation;
use crate::grouplat::{Exponent, GroupSpec, LatticePointN};

const UNIT: [V3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// One monomial per character, closed under division. `gens[ρ]` is the
/// monomial of weight ρ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GGraph {
    pub gens: Vec<Exponent>,
}

/// A rational polyhedral cone in the positive octant of N_R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    /// Primitive inward normals `n`, the cone being `⟨n, v⟩ ≥ 0`.
    pub normals: Vec<V3>,
    /// Primitive extremal rays.
    pub rays: Vec<V3>,
    pub dim: usize,
}

/// The G-Hilb triangulation with the G-graph of each triangle.
#[derive(Debug, Clone)]
pub struct GHilbFan {
    pub fan: Triangulation,
    /// Indexed like `fan.triangles`.
    pub graphs: Vec<GGraph>,
}

impl GGraph {
    pub fn contains(&self, g: &GroupSpec, m: &Exponent) -> bool {
        m.iter().all(|&x| x >= 0) && self.gens[g.index_of_exponent(m)] == *m
    }

    /// Check the defining properties of a G-graph.
    pub fn validate(&self, g: &GroupSpec) -> Result<()> {
        if self.gens.len() != g.order() || self.gens[0] != [0, 0, 0] {
            return invariant("G-graph must have one monomial per character and contain 1");
        }
        for (rho, m) in self.gens.iter().enumerate() {
            if m.iter().any(|&x| x < 0) || g.index_of_exponent(m) != rho {
                return invariant(format!("bad monomial {m:?} for character {rho}"));
            }
            for i in 0..3 {
                if m[i] > 0 {
                    let mut d = *m;
                    d[i] -= 1;
                    if !self.contains(g, &d) {
                        return invariant(format!("{m:?} has divisor {d:?} outside the graph"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All G-graphs of `g`, sorted.
pub fn enumerate_ggraphs(g: &GroupSpec) -> Vec<GGraph> {
    let r = g.r;
    let mut cands: Vec<Exponent> = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if (a + 1) * (b + 1) * (c + 1) <= r {
                    cands.push([a, b, c]);
                }
            }
        }
    }
    cands.sort_by_key(|m| (m[0] + m[1] + m[2], *m));
    let weights: Vec<usize> = cands.iter().map(|m| g.index_of_exponent(m)).collect();
    let index: BTreeMap<Exponent, usize> = cands.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // Divisor candidate indices of each candidate.
    let divisors: Vec<Vec<usize>> = cands
        .iter()
        .map(|m| {
            (0..3)
                .filter(|&i| m[i] > 0)
                .map(|i| {
                    let mut d = *m;
                    d[i] -= 1;
                    index[&d]
                })
                .collect()
        })
        .collect();

    let n = g.order();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    let mut chosen = vec![false; cands.len()];
    slot[0] = Some(0);
    chosen[0] = true;
    let mut out = Vec::new();

    struct Ctx<'a> {
        cands: &'a [Exponent],
        weights: &'a [usize],
        divisors: &'a [Vec<usize>],
        n: usize,
    }
    fn dfs(
        cx: &Ctx,
        last: usize,
        size: usize,
        slot: &mut Vec<Option<usize>>,
        chosen: &mut Vec<bool>,
        out: &mut Vec<GGraph>,
    ) {
        if size == cx.n {
            out.push(GGraph { gens: slot.iter().map(|s| cx.cands[s.unwrap()]).collect() });
            return;
        }
        for k in last + 1..cx.cands.len() {
            let w = cx.weights[k];
            if slot[w].is_some() || !cx.divisors[k].iter().all(|&d| chosen[d]) {
                continue;
            }
            slot[w] = Some(k);
            chosen[k] = true;
            dfs(cx, k, size + 1, slot, chosen, out);
            slot[w] = None;
            chosen[k] = false;
        }
    }
    let cx = Ctx { cands: &cands, weights: &weights, divisors: &divisors, n };
    dfs(&cx, 0, 1, &mut slot, &mut chosen, &mut out);
    out.sort();
    out
}

/// The cone of weights `v` for which Γ is the set of minimal monomials,
/// cut out by the one-step inequalities `⟨e_i + Γ(ρ) − Γ(ρρ_i), v⟩ ≥ 0`.
pub fn cone_of(gamma: &GGraph, g: &GroupSpec) -> Cone {
    let chi = g.coordinate_characters();
    let mut normals: Vec<V3> = UNIT.to_vec();
    for (rho, m) in gamma.gens.iter().enumerate() {
        for i in 0..3 {
            let next = &gamma.gens[g.mul(rho, chi[i])];
            let n = add(&UNIT[i], &[m[0] - next[0], m[1] - next[1], m[2] - next[2]]);
            if !is_zero(&n) {
                normals.push(primitive(&n));
            }
        }
    }
    normals.sort();
    normals.dedup();

    let mut rays: Vec<V3> = Vec::new();
    for a in 0..normals.len() {
        for b in a + 1..normals.len() {
            let d = cross(&normals[a], &normals[b]);
            if is_zero(&d) {
                continue;
            }
            let d = primitive(&d);
            for cand in [d, d.map(|x| -x)] {
                if normals.iter().all(|n| dot(n, &cand) >= 0) {
                    rays.push(cand);
                }
            }
        }
    }
    rays.sort();
    rays.dedup();
    // Drop rays that are positive combinations of two others on a common face.
    let dim = rank(&rays);
    if dim == 3 {
        rays.retain(|r| {
            let face: Vec<&V3> = normals.iter().filter(|n| dot(n, r) == 0).collect();
            rank(&face.iter().map(|n| **n).collect::<Vec<_>>()) == 2
        });
    }
    Cone { normals, rays, dim }
}

fn rank(vs: &[V3]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let a = vs[0];
    let Some(b) = vs.iter().find(|v| !is_zero(&cross(&a, v))) else {
        return 1;
    };
    let n = cross(&a, b);
    if vs.iter().any(|v| dot(&n, v) != 0) {
        3
    } else {
        2
    }
}

/// Characters of monomials of Γ not divisible into any other member.
pub fn socle(gamma: &GGraph, g: &GroupSpec) -> Vec<usize> {
    let chi = g.coordinate_characters();
    (0..gamma.gens.len())
        .filter(|&rho| {
            (0..3).all(|i| gamma.gens[g.mul(rho, chi[i])] != add(&gamma.gens[rho], &UNIT[i]))
        })
        .collect()
}

/// Assemble G-Hilb from the three-dimensional G-graph cones.
pub fn ghilb_fan(g: &GroupSpec) -> Result<GHilbFan> {
    let r = g.r;
    let mut by_triangle: BTreeMap<[LatticePointN; 3], GGraph> = BTreeMap::new();
    for gamma in enumerate_ggraphs(g) {
        let cone = cone_of(&gamma, g);
        if cone.dim < 3 {
            continue;
        }
        if cone.rays.len() != 3 {
            return invariant(format!("G-graph cone with {} rays", cone.rays.len()));
        }
        let mut tri = [[0i64; 3]; 3];
        for (k, d) in cone.rays.iter().enumerate() {
            let s: i64 = d.iter().sum();
            if s <= 0 || d.iter().any(|&x| (r * x) % s != 0) {
                return invariant(format!("ray {d:?} is not a lattice point of the simplex"));
            }
            tri[k] = d.map(|x| r * x / s);
        }
        tri.sort();
        if by_triangle.insert(tri, gamma).is_some() {
            return invariant(format!("two G-graphs share the cone over {tri:?}"));
        }
    }
    let tris: Vec<[LatticePointN; 3]> = by_triangle.keys().copied().collect();
    let fan = Triangulation::from_triangles(r, &tris)?;
    let junior: Vec<LatticePointN> = g.junior_points().into_iter().map(|p| p.c).collect();
    if let Some(p) = fan.vertices.iter().find(|p| !junior.contains(p)) {
        return invariant(format!("vertex {p:?} is not a junior point"));
    }
    let graphs = fan
        .triangles
        .iter()
        .map(|t| {
            let key = t.map(|i| fan.vertices[i]);
            by_triangle[&key].clone()
        })
        .collect();
    Ok(GHilbFan { fan, graphs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouplat::parse_group;

    fn graph(g: &GroupSpec, ms: &[Exponent]) -> GGraph {
        let mut gens = vec![[0; 3]; g.order()];
        for m in ms {
            gens[g.index_of_exponent(m)] = *m;
        }
        GGraph { gens }
    }

    #[test]
    fn a1_graphs() {
        let g = parse_group("1/2(1,0,1)").unwrap();
        let all = enumerate_ggraphs(&g);
        assert_eq!(all, vec![graph(&g, &[[0, 0, 1]]), graph(&g, &[[1, 0, 0]])]);
        let c = cone_of(&graph(&g, &[[1, 0, 0]]), &g);
        assert_eq!(c.dim, 3);
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![[0, 0, 1], [0, 1, 0], [1, 0, 1]]);
        assert_eq!(socle(&graph(&g, &[[1, 0, 0]]), &g), vec![1]);
    }

    #[test]
    fn p2_graphs() {
        let g = parse_group("1/3(1,1,1)").unwrap();
        let full: Vec<GGraph> = enumerate_ggraphs(&g)
            .into_iter()
            .filter(|gm| cone_of(gm, &g).dim == 3)
            .collect();
        let mut expect = vec![
            graph(&g, &[[1, 0, 0], [2, 0, 0]]),
            graph(&g, &[[0, 1, 0], [0, 2, 0]]),
            graph(&g, &[[0, 0, 1], [0, 0, 2]]),
        ];
        expect.sort();
        assert_eq!(full, expect);
        let x = graph(&g, &[[1, 0, 0], [2, 0, 0]]);
        assert_eq!(socle(&x, &g), vec![2]);
        let mut rays = cone_of(&x, &g).rays;
        rays.sort();
        assert_eq!(rays, vec![[0, 0, 1], [0, 1, 0], [1, 1, 1]]);
    }

    #[test]
    fn fan_sizes() {
        for (s, interior) in [("1/3(1,1,1)", 1), ("1/11(1,2,8)", 5), ("1/6(1,2,3)", 1), ("1/2(1,0,1)", 0)] {
            let g = parse_group(s).unwrap();
            let h = ghilb_fan(&g).unwrap();
            assert_eq!(h.fan.triangles.len() as i64, g.r, "{s}");
            assert_eq!(h.fan.interior_vertices().len(), interior, "{s}");
            for gm in &h.graphs {
                gm.validate(&g).unwrap();
            }
        }
    }
}
