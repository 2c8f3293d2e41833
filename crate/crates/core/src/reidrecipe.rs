//! Reid's recipe: characters marking the lines and compact divisors of G-Hilb.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{cross, dot, is_zero, sub};
use crate::error::{invariant, Result};
use crate::fan::Triangulation;
use crate::ggraph::{socle, GHilbFan};
use crate::grouplat::GroupSpec;
use crate::tautline::TautBundle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    /// Interior edge index → character.
    pub line_marks: BTreeMap<usize, usize>,
    /// Interior vertex index → one or two characters.
    pub divisor_marks: BTreeMap<usize, Vec<usize>>,
}

pub fn mark_lines(fan: &Triangulation, g: &GroupSpec) -> Result<BTreeMap<usize, usize>> {
    fan.interior_edges()
        .into_iter()
        .map(|e| Ok((e, fan.line_ratio(e, g)?.2)))
        .collect()
}

/// Characters in the socle of every G-cluster over each compact divisor.
pub fn mark_divisors(gh: &GHilbFan, g: &GroupSpec) -> Result<BTreeMap<usize, Vec<usize>>> {
    let fan = &gh.fan;
    let socles: Vec<BTreeSet<usize>> = gh.graphs.iter().map(|gm| socle(gm, g).into_iter().collect()).collect();
    let mut out = BTreeMap::new();
    for v in fan.interior_vertices() {
        let mut common: Option<BTreeSet<usize>> = None;
        for (k, t) in fan.triangles.iter().enumerate() {
            if t.contains(&v) {
                common = Some(match common {
                    None => socles[k].clone(),
                    Some(c) => c.intersection(&socles[k]).copied().collect(),
                });
            }
        }
        let marks: Vec<usize> = common.unwrap_or_default().into_iter().collect();
        if marks.is_empty() {
            return invariant(format!("compact divisor at {:?} is unmarked", fan.vertices[v]));
        }
        out.insert(v, marks);
    }
    Ok(out)
}

pub fn marking(gh: &GHilbFan, g: &GroupSpec) -> Result<Marking> {
    Ok(Marking { line_marks: mark_lines(&gh.fan, g)?, divisor_marks: mark_divisors(gh, g)? })
}

/// Six rays forming three straight lines through `v`.
pub fn is_del_pezzo6(fan: &Triangulation, v: usize) -> bool {
    let nb = fan.neighbors_cyclic(v);
    if nb.len() != 6 {
        return false;
    }
    let c = fan.vertices[v];
    (0..3).all(|i| {
        let a = sub(&fan.vertices[nb[i]], &c);
        let b = sub(&fan.vertices[nb[i + 3]], &c);
        is_zero(&cross(&a, &b)) && dot(&a, &b) < 0
    })
}

impl Marking {
    /// Every nontrivial character marks exactly one divisor or some lines,
    /// and two marks occur exactly at del Pezzo sextics.
    pub fn check(&self, fan: &Triangulation, g: &GroupSpec) -> Result<()> {
        let lines: BTreeSet<usize> = self.line_marks.values().copied().collect();
        let mut on_divisors: BTreeMap<usize, usize> = BTreeMap::new();
        for marks in self.divisor_marks.values() {
            for &m in marks {
                *on_divisors.entry(m).or_default() += 1;
            }
        }
        for rho in 1..g.order() {
            let d = on_divisors.get(&rho).copied().unwrap_or(0);
            let l = lines.contains(&rho);
            if !((d == 1 && !l) || (d == 0 && l)) {
                return invariant(format!("character {} marks {d} divisors and lines: {l}", g.label(rho)));
            }
        }
        if lines.contains(&0) || on_divisors.contains_key(&0) {
            return invariant("the trivial character marks something");
        }
        for (&v, marks) in &self.divisor_marks {
            if (marks.len() == 2) != is_del_pezzo6(fan, v) || marks.len() > 2 {
                return invariant(format!("vertex {:?} has {} marks", fan.vertices[v], marks.len()));
            }
        }
        Ok(())
    }

    /// At a doubly marked vertex with marks l, m and lines i, j, k through
    /// it: T_l ⊗ T_m ≅ T_i ⊗ T_j ⊗ T_k on the whole of Y.
    pub fn check_del_pezzo_relations(&self, fan: &Triangulation, g: &GroupSpec, taut: &TautBundle) -> Result<()> {
        for (&v, marks) in &self.divisor_marks {
            if marks.len() != 2 {
                continue;
            }
            let nb = fan.neighbors_cyclic(v);
            let lines: Vec<usize> = (0..3)
                .map(|i| self.line_marks[&fan.edge_index(v, nb[i]).unwrap()])
                .collect();
            let basis = g.invariant_lattice_basis();
            let mut lhs = taut.bundles[marks[0]].tensor(&taut.bundles[marks[1]]);
            let mut rhs = taut.bundles[lines[0]].tensor(&taut.bundles[lines[1]]).tensor(&taut.bundles[lines[2]]);
            lhs.canonicalize(&basis, fan);
            rhs.canonicalize(&basis, fan);
            if lhs.coeffs != rhs.coeffs {
                return invariant(format!("del Pezzo relation fails at {:?}", fan.vertices[v]));
            }
        }
        Ok(())
    }
}

/// Characters σ with T_σ|_D ≅ T_ρ|_D on the irreducible divisor D_v,
/// detected by equal degrees on every curve of D_v.
pub fn same_restriction(fan: &Triangulation, taut: &TautBundle, v: usize, rho: usize) -> Result<Vec<usize>> {
    let edges: Vec<usize> = fan
        .neighbors_cyclic(v)
        .into_iter()
        .map(|u| fan.edge_index(v, u).unwrap())
        .collect();
    let degs = |s: usize| -> Result<Vec<i64>> { edges.iter().map(|&e| taut.degree(fan, s, e)).collect() };
    let target = degs(rho)?;
    let mut out = Vec::new();
    for s in 0..taut.bundles.len() {
        if degs(s)? == target {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggraph::ghilb_fan;
    use crate::grouplat::parse_group;

    #[test]
    fn p2_marks() {
        let g = parse_group("1/3(1,1,1)").unwrap();
        let gh = ghilb_fan(&g).unwrap();
        let m = marking(&gh, &g).unwrap();
        assert!(m.line_marks.values().all(|&c| c == 1));
        assert_eq!(m.line_marks.len(), 3);
        assert_eq!(m.divisor_marks.values().cloned().collect::<Vec<_>>(), vec![vec![2]]);
        m.check(&gh.fan, &g).unwrap();
    }
}
