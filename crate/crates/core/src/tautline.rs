//! Toric line bundles on a crepant resolution, the tautological bundles
//! T_ρ, and their Fourier–Mukai classes in R(G).
//!
//! A line bundle is stored as piecewise-linear data: an r-scaled coefficient
//! `A_v = −⟨m_τ, c_v⟩` per vertex and a local generator `m_τ` (a Laurent
//! exponent) per triangle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{dot, solve3, sub};
use crate::error::{invariant, Error, Result};
use crate::fan::{StarSurface, Triangulation};
use crate::ggraph::GHilbFan;
use crate::grouplat::{reduce_with_basis, Exponent, GroupSpec};

/// An element of R(G): one integer per character.
pub type RClass = Vec<i64>;

/// A stability parameter, one rational per character, summing to zero.
pub type ThetaVector = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineData {
    /// r-scaled divisor coefficient per vertex.
    pub coeffs: Vec<i64>,
    /// Local generator per triangle.
    pub gens: Vec<Exponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TautBundle {
    /// Indexed by character.
    pub bundles: Vec<LineData>,
}

impl LineData {
    pub fn trivial(fan: &Triangulation) -> Self {
        LineData { coeffs: vec![0; fan.vertices.len()], gens: vec![[0; 3]; fan.triangles.len()] }
    }

    /// Recover local generators from coefficients.
    pub fn from_coeffs(fan: &Triangulation, coeffs: Vec<i64>) -> Result<Self> {
        let mut gens = Vec::with_capacity(fan.triangles.len());
        for t in &fan.triangles {
            let rows = t.map(|i| fan.vertices[i]);
            let rhs = t.map(|i| -coeffs[i]);
            match solve3(&rows, &rhs) {
                Some(m) => gens.push(m),
                None => return invariant(format!("coefficients are not Cartier on triangle {t:?}")),
            }
        }
        Ok(LineData { coeffs, gens })
    }

    pub fn tensor(&self, other: &LineData) -> LineData {
        LineData {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            gens: self
                .gens
                .iter()
                .zip(&other.gens)
                .map(|(a, b)| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> LineData {
        LineData {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            gens: self.gens.iter().map(|m| m.map(|x| -x)).collect(),
        }
    }

    /// Shift by the global character of M that pins the corner
    /// coefficients to the Hermite fundamental domain of `basis`.
    pub fn canonicalize(&mut self, basis: &[Exponent; 3], fan: &Triangulation) {
        let r = fan.r;
        let corner = |i: usize| {
            let mut p = [0; 3];
            p[i] = r;
            fan.vertex_index(&p).expect("corner vertex")
        };
        let q = [0, 1, 2].map(|i| -self.coeffs[corner(i)] / r);
        let k = sub(&reduce_with_basis(basis, &q), &q);
        for (v, p) in fan.vertices.iter().enumerate() {
            self.coeffs[v] -= dot(&k, p);
        }
        for m in &mut self.gens {
            *m = [m[0] + k[0], m[1] + k[1], m[2] + k[2]];
        }
    }

    /// Chart data reproduces the coefficients on every triangle.
    pub fn check(&self, fan: &Triangulation) -> Result<()> {
        for (k, t) in fan.triangles.iter().enumerate() {
            for &v in t {
                if -dot(&self.gens[k], &fan.vertices[v]) != self.coeffs[v] {
                    return invariant(format!("generator on triangle {k} disagrees at vertex {v}"));
                }
            }
        }
        Ok(())
    }

    /// Degree on the toric curve of an interior edge.
    pub fn degree(&self, fan: &Triangulation, e: usize) -> Result<i64> {
        let edge = fan
            .edges()
            .get(e)
            .filter(|x| x.is_interior())
            .ok_or_else(|| Error::Degenerate(format!("edge {e} is not an interior edge")))?;
        let (_, v2) = fan.opposite(edge);
        let diff = sub(&self.gens[edge.tris[0]], &self.gens[edge.tris[1]]);
        let d = dot(&diff, &fan.vertices[v2]);
        if d % fan.r != 0 {
            return invariant("non-integral curve degree");
        }
        Ok(d / fan.r)
    }

    /// Coefficients `d_i` of the restriction to D_v along the star's rays.
    pub fn surface_coeffs(&self, fan: &Triangulation, star: &StarSurface) -> Result<Vec<i64>> {
        let v = star.center;
        let t0 = fan
            .triangles
            .iter()
            .position(|t| t.contains(&v))
            .ok_or_else(|| Error::Invariant("vertex in no triangle".into()))?;
        let m0 = self.gens[t0];
        star.rays
            .iter()
            .map(|&u| {
                let x = self.coeffs[u] + dot(&m0, &fan.vertices[u]);
                if x % fan.r != 0 {
                    invariant("restriction to a compact divisor is not integral")
                } else {
                    Ok(x / fan.r)
                }
            })
            .collect()
    }
}

/// The bundle O(D) for a reduced divisor given by vertex indices.
pub fn divisor_bundle(fan: &Triangulation, d: &[usize]) -> Result<LineData> {
    let mut coeffs = vec![0; fan.vertices.len()];
    for &v in d {
        coeffs[v] = fan.r;
    }
    LineData::from_coeffs(fan, coeffs)
}

fn surface_degrees(star: &StarSurface, d: &[i64]) -> Vec<i64> {
    let n = d.len();
    (0..n)
        .map(|i| star.self_intersections[i] * d[i] + d[(i + n - 1) % n] + d[(i + 1) % n])
        .collect()
}

/// Intersection number of two divisors given by ray coefficients on a star.
pub fn surface_intersection(star: &StarSurface, d: &[i64], e: &[i64]) -> i64 {
    d.iter().zip(surface_degrees(star, e)).map(|(a, b)| a * b).sum()
}

/// Riemann–Roch on the smooth complete toric surface of `star`.
pub fn euler_char_surface(star: &StarSurface, d: &[i64]) -> Result<i64> {
    if d.len() != star.rays.len() {
        return Err(Error::Precondition("coefficient count does not match the star".into()));
    }
    let deg = surface_degrees(star, d);
    let num: i64 = d.iter().zip(&deg).map(|(a, b)| a * b).sum::<i64>() + deg.iter().sum::<i64>();
    if num % 2 != 0 {
        return invariant("odd Riemann-Roch numerator");
    }
    Ok(1 + num / 2)
}

/// χ(L|_D) for a reduced compact divisor with normal crossings, by
/// inclusion–exclusion over components, double curves and triple points.
pub fn chi_on_divisor(fan: &Triangulation, stars: &[StarSurface], l: &LineData, d: &[usize]) -> Result<i64> {
    let star_of = |v: usize| {
        stars
            .iter()
            .find(|s| s.center == v)
            .ok_or_else(|| Error::Precondition(format!("vertex {v} is not a compact divisor")))
    };
    let mut chi = 0;
    for &v in d {
        let s = star_of(v)?;
        chi += euler_char_surface(s, &l.surface_coeffs(fan, s)?)?;
    }
    for (k, e) in fan.edges().iter().enumerate() {
        if d.contains(&e.a) && d.contains(&e.b) {
            chi -= l.degree(fan, k)? + 1;
        }
    }
    chi += fan.triangles.iter().filter(|t| t.iter().all(|v| d.contains(v))).count() as i64;
    Ok(chi)
}

/// χ(L|_D) by Riemann–Roch on Y: χ(O_D) + (L²·D − L·D²)/2.
pub fn chi_on_divisor_rr(fan: &Triangulation, stars: &[StarSurface], l: &LineData, d: &[usize]) -> Result<i64> {
    let trivial = LineData::trivial(fan);
    let chi_o = chi_on_divisor(fan, stars, &trivial, d)?;
    let od = divisor_bundle(fan, d)?;
    let mut num = 0;
    for &v in d {
        let s = stars
            .iter()
            .find(|s| s.center == v)
            .ok_or_else(|| Error::Precondition(format!("vertex {v} is not a compact divisor")))?;
        let lc = l.surface_coeffs(fan, s)?;
        let dc = od.surface_coeffs(fan, s)?;
        num += surface_intersection(s, &lc, &lc) - surface_intersection(s, &lc, &dc);
    }
    if num % 2 != 0 {
        return invariant("odd Riemann-Roch numerator");
    }
    Ok(chi_o + num / 2)
}

pub fn stars(fan: &Triangulation) -> Result<Vec<StarSurface>> {
    fan.interior_vertices().into_iter().map(|v| fan.star_surface(v)).collect()
}

impl TautBundle {
    /// Tautological bundles of G-Hilb: the generator of T_ρ on a chart is the
    /// monomial of weight ρ in the chart's G-graph.
    pub fn ghilb(g: &GroupSpec, gh: &GHilbFan) -> Result<Self> {
        let fan = &gh.fan;
        let mut bundles = Vec::with_capacity(g.order());
        for rho in 0..g.order() {
            let gens: Vec<Exponent> = gh.graphs.iter().map(|gm| gm.gens[rho]).collect();
            let mut coeffs = vec![None; fan.vertices.len()];
            for (k, t) in fan.triangles.iter().enumerate() {
                for &v in t {
                    let a = -dot(&gens[k], &fan.vertices[v]);
                    match coeffs[v] {
                        None => coeffs[v] = Some(a),
                        Some(b) if b == a => {}
                        Some(_) => return invariant(format!("G-graph generators of ρ{rho} are not piecewise linear")),
                    }
                }
            }
            bundles.push(LineData { coeffs: coeffs.into_iter().map(|c| c.unwrap()).collect(), gens });
        }
        let mut t = TautBundle { bundles };
        t.canonicalize(g, fan);
        t.validate(g, fan)?;
        Ok(t)
    }

    pub fn degree(&self, fan: &Triangulation, rho: usize, e: usize) -> Result<i64> {
        self.bundles[rho].degree(fan, e)
    }

    /// Normalize each bundle modulo global characters of M.
    pub fn canonicalize(&mut self, g: &GroupSpec, fan: &Triangulation) {
        let basis = g.invariant_lattice_basis();
        for l in &mut self.bundles {
            l.canonicalize(&basis, fan);
        }
    }

    /// PL-consistency, weights of generators, and triviality of T_ρ0.
    pub fn validate(&self, g: &GroupSpec, fan: &Triangulation) -> Result<()> {
        if self.bundles.len() != g.order() {
            return invariant("one bundle per character expected");
        }
        for (rho, l) in self.bundles.iter().enumerate() {
            l.check(fan)?;
            if let Some(m) = l.gens.iter().find(|m| g.index_of_exponent(m) != rho) {
                return invariant(format!("generator {m:?} of T_{rho} has the wrong weight"));
            }
        }
        if self.bundles[0].coeffs.iter().any(|&a| a != 0) {
            return invariant("T_ρ0 is not trivial");
        }
        Ok(())
    }

    /// Coefficient data only, the canonical key of the bundle collection.
    pub fn key(&self) -> Vec<Vec<i64>> {
        self.bundles.iter().map(|l| l.coeffs.clone()).collect()
    }

    /// φ(O_ℓ) = Σ_ρ (deg T_ρ|ℓ + 1)·ρ.
    pub fn curve_class(&self, fan: &Triangulation, e: usize) -> Result<RClass> {
        self.bundles.iter().map(|l| Ok(l.degree(fan, e)? + 1)).collect()
    }

    /// Σ_σ χ(L_σ|_D)·σ where `L_σ = T_σ ⊗ twist`.
    fn divisor_class(&self, fan: &Triangulation, stars: &[StarSurface], twist: &LineData, d: &[usize]) -> Result<RClass> {
        if d.is_empty() {
            return Err(Error::Precondition("empty divisor".into()));
        }
        self.bundles
            .iter()
            .map(|l| chi_on_divisor(fan, stars, &l.tensor(twist), d))
            .collect()
    }

    /// φ(T_ρ^{-1}|_D).
    pub fn restriction_class(&self, fan: &Triangulation, stars: &[StarSurface], rho: usize, d: &[usize]) -> Result<RClass> {
        self.divisor_class(fan, stars, &self.bundles[rho].inverse(), d)
    }

    /// φ(T_ρ^{-1} ⊗ ω_D), with ω_D = O(D)|_D.
    pub fn canonical_class(&self, fan: &Triangulation, stars: &[StarSurface], rho: usize, d: &[usize]) -> Result<RClass> {
        let tw = self.bundles[rho].inverse().tensor(&divisor_bundle(fan, d)?);
        self.divisor_class(fan, stars, &tw, d)
    }

    fn twist_chars(&self, g: &GroupSpec, fan: &Triangulation, d: &[usize], chars: &[usize], sign: i64) -> Result<Self> {
        let od = divisor_bundle(fan, d)?;
        let od = if sign < 0 { od.inverse() } else { od };
        let mut out = self.clone();
        for &rho in chars {
            out.bundles[rho] = out.bundles[rho].tensor(&od);
        }
        out.canonicalize(g, fan);
        out.validate(g, fan)?;
        Ok(out)
    }

    /// Type-0 update for the splitting `R = R1 ⊕ R2` given as a 0/1 class of
    /// R1: if ρ0 ∈ R1 then T_ρ(−D) for ρ ∈ R2, otherwise T_ρ(D) for ρ ∈ R1.
    pub fn twist_by_divisor(&self, g: &GroupSpec, fan: &Triangulation, d: &[usize], r1: &RClass) -> Result<Self> {
        if r1.len() != g.order() || r1.iter().any(|&x| x != 0 && x != 1) {
            return Err(Error::Precondition("splitting must be a 0/1 class over all characters".into()));
        }
        if d.iter().any(|&v| !fan.is_interior_vertex(v)) {
            return Err(Error::Precondition("divisor must be compact".into()));
        }
        let (chars, sign): (Vec<usize>, i64) = if r1[0] == 1 {
            ((0..g.order()).filter(|&i| r1[i] == 0).collect(), -1)
        } else {
            ((0..g.order()).filter(|&i| r1[i] == 1).collect(), 1)
        };
        self.twist_chars(g, fan, d, &chars, sign)
    }

    /// Transport across a flop: same coefficients, generators on the new fan.
    pub fn proper_transform(&self, g: &GroupSpec, new_fan: &Triangulation) -> Result<Self> {
        let bundles = self
            .bundles
            .iter()
            .map(|l| LineData::from_coeffs(new_fan, l.coeffs.clone()))
            .collect::<Result<Vec<_>>>()?;
        let t = TautBundle { bundles };
        t.validate(g, new_fan)?;
        Ok(t)
    }

    /// Type-III update: T_ρ(−D) where the fibre degree is −1, T_ρ(D) where
    /// it is +1. `d` may be a noncompact boundary divisor.
    pub fn type_iii_twist(&self, g: &GroupSpec, fan: &Triangulation, d: &[usize], fiber_degrees: &[i64]) -> Result<Self> {
        if fiber_degrees.len() != g.order() {
            return Err(Error::Precondition("one fibre degree per character expected".into()));
        }
        let neg = fiber_degrees.iter().any(|&x| x < 0);
        let pos = fiber_degrees.iter().any(|&x| x > 0);
        if (neg && pos) || fiber_degrees.iter().any(|&x| x.abs() > 1) {
            return Err(Error::InvalidFlip(format!("fibre degrees {fiber_degrees:?} have mixed signs")));
        }
        let od = divisor_bundle(fan, d)?;
        let mut out = self.clone();
        for (rho, &k) in fiber_degrees.iter().enumerate() {
            if k == -1 {
                out.bundles[rho] = out.bundles[rho].tensor(&od.inverse());
            } else if k == 1 {
                out.bundles[rho] = out.bundles[rho].tensor(&od);
            }
        }
        out.canonicalize(g, fan);
        out.validate(g, fan)?;
        Ok(out)
    }

    /// c₁ of the fractional bundle ⊗ T_ρ^θ(ρ), as r-scaled rational coefficients.
    pub fn line_bundle_of_theta(&self, theta: &ThetaVector) -> Vec<BigRational> {
        let n = self.bundles.first().map_or(0, |l| l.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (l, t) in self.bundles.iter().zip(theta) {
            for (o, &a) in out.iter_mut().zip(&l.coeffs) {
                *o += t * BigRational::from_integer(BigInt::from(a));
            }
        }
        out
    }

    /// Degree of the fractional bundle of θ on an interior edge.
    pub fn theta_degree(&self, fan: &Triangulation, theta: &ThetaVector, e: usize) -> Result<BigRational> {
        let mut s = BigRational::zero();
        for (l, t) in self.bundles.iter().zip(theta) {
            s += t * BigRational::from_integer(BigInt::from(l.degree(fan, e)?));
        }
        Ok(s)
    }
}

/// Σ_ρ θ(ρ)·c(ρ).
pub fn theta_pairing(theta: &ThetaVector, c: &RClass) -> BigRational {
    theta
        .iter()
        .zip(c)
        .fold(BigRational::zero(), |acc, (t, &x)| acc + t * BigRational::from_integer(BigInt::from(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggraph::ghilb_fan;
    use crate::grouplat::parse_group;

    fn setup(s: &str) -> (GroupSpec, GHilbFan, TautBundle) {
        let g = parse_group(s).unwrap();
        let gh = ghilb_fan(&g).unwrap();
        let t = TautBundle::ghilb(&g, &gh).unwrap();
        (g, gh, t)
    }

    #[test]
    fn p2_degrees_and_classes() {
        let (_, gh, t) = setup("1/3(1,1,1)");
        let fan = &gh.fan;
        for e in fan.interior_edges() {
            assert_eq!(t.degree(fan, 0, e).unwrap(), 0);
            assert_eq!(t.degree(fan, 1, e).unwrap(), 1);
            assert_eq!(t.degree(fan, 2, e).unwrap(), 2);
            assert_eq!(t.curve_class(fan, e).unwrap(), vec![1, 2, 3]);
        }
        let st = stars(fan).unwrap();
        let c = fan.interior_vertices()[0];
        assert_eq!(t.restriction_class(fan, &st, 2, &[c]).unwrap(), vec![0, 0, 1]);
        assert_eq!(t.canonical_class(fan, &st, 0, &[c]).unwrap(), vec![1, 0, 0]);
        // Generators of T_ρ1 are x, y, z on the three charts.
        let mut g1 = t.bundles[1].gens.clone();
        g1.sort();
        let basis = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];
        let diffs: Vec<_> = g1.iter().map(|m| sub(m, &g1[0])).collect();
        assert_eq!(diffs.len(), 3);
        assert!(g1.iter().zip(basis).all(|(m, b)| sub(m, &b) == sub(&g1[0], &basis[0])));
    }

    #[test]
    fn p2_euler_characteristics() {
        let (_, gh, _) = setup("1/3(1,1,1)");
        let fan = &gh.fan;
        let s = fan.star_surface(fan.interior_vertices()[0]).unwrap();
        assert_eq!(euler_char_surface(&s, &[0, 0, 0]).unwrap(), 1);
        assert_eq!(euler_char_surface(&s, &[1, 0, 0]).unwrap(), 3);
        assert_eq!(euler_char_surface(&s, &[-1, -1, -1]).unwrap(), 1);
        assert_eq!(euler_char_surface(&s, &[-3, 0, 0]).unwrap(), 1);
    }
}
