//! Chambers of the stability space Θ: defining inequalities, exact facets,
//! wall types, wall crossing and enumeration of the chamber graph.
//!
//! Θ is identified with Q^{r−1} by dropping θ(ρ0) = −Σ_{ρ≠ρ0} θ(ρ), so the
//! linear form of a class `c` has coefficients `c(ρ) − c(ρ0)` for ρ ≠ ρ0.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{cross, gcd_slice, is_zero};
use crate::error::{invariant, Error, Result};
use crate::fan::{flip_reachable_fans, StarSurface, Triangulation};
use crate::ggraph::{ghilb_fan, GHilbFan};
use crate::grouplat::{GroupSpec, LatticePointN};
use crate::dd::{dot, extreme_rays, null_vector, rank, Ray};
use crate::lp::{feasible_point, in_cone};
use crate::reidrecipe::{marking, Marking};
use crate::tautline::{stars, LineData, RClass, TautBundle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_chambers: usize,
    pub max_lps: usize,
    pub max_fans: usize,
    /// Wall-clock cap on a chamber search, in seconds.
    pub max_seconds: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_chambers: 10_000, max_lps: 100_000, max_fans: crate::fan::DEFAULT_MAX_FANS, max_seconds: None }
    }
}

/// How facets are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// One exact LP per distinct normal.
    Lp,
    /// Facets found by shooting rays from an interior point, certified by
    /// the extreme rays of the facet cone. No LPs unless arithmetic
    /// overflows or no interior point is known.
    RayShooting,
}

/// Facet backend plus a count of LP solves against a cap.
#[derive(Debug, Clone)]
pub struct Budget {
    pub lps: usize,
    pub max_lps: usize,
    pub backend: Backend,
}

impl Budget {
    pub fn new(max_lps: usize) -> Self {
        Budget { lps: 0, max_lps, backend: Backend::RayShooting }
    }

    pub fn with_backend(max_lps: usize, backend: Backend) -> Self {
        Budget { lps: 0, max_lps, backend }
    }

    fn spend(&mut self) -> Result<()> {
        self.lps += 1;
        if self.lps > self.max_lps {
            return Err(Error::ResourceLimit(format!("more than {} LP solves", self.max_lps)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    /// θ(class) > 0
    Positive,
    /// θ(class) < 0
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    Curve { edge: usize },
    SubsheafDivisor { rho: usize, divisor: Vec<usize> },
    QuotientDivisor { rho: usize, divisor: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub cls: RClass,
    pub sense: Sense,
    pub source: Source,
    /// Reduced linear form, signed so that the inequality reads `form·θ > 0`.
    pub form: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WallType {
    Zero,
    I,
    III,
}

impl fmt::Display for WallType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallType::Zero => "0",
            WallType::I => "I",
            WallType::III => "III",
        })
    }
}

/// How a wall acts on the moduli space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WallAction {
    /// Destabilizing splitting `R1 ⊂ R` (0/1 class) with ρ0 on one side.
    Zero { r1: RClass, r2: RClass },
    /// Flop of the listed (−1,−1) edges.
    I { edges: Vec<usize> },
    /// Divisor `D_w` ruled over a curve with the listed fibres contracted.
    III { divisor: usize, fibers: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive reduced normal; the chamber lies on `normal·θ > 0`.
    pub normal: Vec<i64>,
    /// Generating inequalities supported on this facet.
    pub sources: Vec<Inequality>,
    pub wall_type: WallType,
    pub action: WallAction,
    /// Rational point in the relative interior of the facet.
    pub sample: Vec<BigRational>,
    pub label: String,
}

/// A crepant resolution with its tautological bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberState {
    pub fan: Triangulation,
    pub taut: TautBundle,
    /// Wall labels crossed from the G-Hilb chamber.
    pub provenance: Vec<String>,
}

/// Canonical identity of a chamber state.
pub type StateKey = (Vec<[usize; 3]>, Vec<Vec<i64>>);

impl ChamberState {
    pub fn key(&self) -> StateKey {
        (self.fan.triangles.clone(), self.taut.key())
    }

    /// Rebuild from triangles and tautological coefficients.
    pub fn from_parts(g: &GroupSpec, triangles: &[[LatticePointN; 3]], coeffs: &[Vec<i64>]) -> Result<Self> {
        let fan = Triangulation::from_triangles(g.r, triangles)?;
        if coeffs.len() != g.order() || coeffs.iter().any(|c| c.len() != fan.vertices.len()) {
            return Err(Error::Validation("coefficient table does not match the fan".into()));
        }
        let bundles = coeffs
            .iter()
            .map(|c| LineData::from_coeffs(&fan, c.clone()))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Validation(e.to_string()))?;
        let mut taut = TautBundle { bundles };
        taut.canonicalize(g, &fan);
        taut.validate(g, &fan).map_err(|e| Error::Validation(e.to_string()))?;
        Ok(ChamberState { fan, taut, provenance: Vec::new() })
    }
}

/// Reduced form of a class.
pub fn reduced_form(cls: &RClass) -> Vec<i64> {
    cls[1..].iter().map(|&c| c - cls[0]).collect()
}

fn primitive_vec(v: &[i64]) -> Vec<i64> {
    let g = gcd_slice(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn eval(form: &[i64], theta: &[BigRational]) -> BigRational {
    form.iter()
        .zip(theta)
        .fold(BigRational::zero(), |s, (&a, t)| s + BigRational::from_integer(BigInt::from(a)) * t)
}

/// Whether every form is strictly positive at `p`.
fn positive_on<'a>(forms: impl IntoIterator<Item = &'a [i64]>, p: &[BigRational]) -> bool {
    match integral_point(p) {
        Some(pi) => forms.into_iter().all(|f| dot(f, &pi).map_or_else(|| eval(f, p).is_positive(), |v| v > 0)),
        None => forms.into_iter().all(|f| eval(f, p).is_positive()),
    }
}

fn nonempty_subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out: Vec<Vec<usize>> = (1u64..(1 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn make(cls: RClass, sense: Sense, source: Source) -> Result<Inequality> {
    let mut form = reduced_form(&cls);
    if sense == Sense::Negative {
        form.iter_mut().for_each(|x| *x = -*x);
    }
    if form.iter().all(|&x| x == 0) {
        return invariant(format!("inequality from {source:?} is a multiple of the regular representation"));
    }
    Ok(Inequality { cls, sense, source, form })
}

fn dedup(ineqs: Vec<Inequality>) -> Vec<Inequality> {
    let mut seen = BTreeSet::new();
    ineqs
        .into_iter()
        .filter(|q| seen.insert((q.form.clone(), q.sense == Sense::Positive)))
        .collect()
}

/// All curve and divisor inequalities of a state.
pub fn generate_inequalities(state: &ChamberState) -> Result<Vec<Inequality>> {
    let fan = &state.fan;
    let st = stars(fan)?;
    let mut out = Vec::new();
    for e in fan.interior_edges() {
        out.push(make(state.taut.curve_class(fan, e)?, Sense::Positive, Source::Curve { edge: e })?);
    }
    for d in nonempty_subsets(&fan.interior_vertices()) {
        for rho in 0..state.taut.bundles.len() {
            let c = state.taut.restriction_class(fan, &st, rho, &d)?;
            out.push(make(c, Sense::Positive, Source::SubsheafDivisor { rho, divisor: d.clone() })?);
            let c = state.taut.canonical_class(fan, &st, rho, &d)?;
            out.push(make(c, Sense::Negative, Source::QuotientDivisor { rho, divisor: d.clone() })?);
        }
    }
    Ok(dedup(out))
}

/// Irredundant facet normals (with the inequalities on each), a point of
/// the open chamber and a relative interior point of each facet.
#[derive(Debug, Clone)]
pub struct Cone {
    pub facets: Vec<(Vec<i64>, Vec<usize>)>,
    pub samples: Vec<Vec<BigRational>>,
    pub interior: Vec<BigRational>,
    /// Primitive normals found redundant.
    pub redundant: Vec<Vec<i64>>,
}

/// `hint`, if given, should be a point of the open chamber; it saves an LP.
pub fn chamber_cone(dim: usize, ineqs: &[Inequality], hint: Option<&[BigRational]>, budget: &mut Budget) -> Result<Cone> {
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (k, q) in ineqs.iter().enumerate() {
        groups.entry(primitive_vec(&q.form)).or_default().push(k);
    }
    let normals: Vec<Vec<i64>> = groups.keys().cloned().collect();
    let split = match budget.backend {
        Backend::RayShooting => {
            let inside = |p: &[BigRational]| positive_on(normals.iter().map(|n| n.as_slice()), p);
            let p = match hint {
                Some(p) if inside(p) => Some(p.to_vec()),
                _ => {
                    let rows: Vec<&[i64]> = normals.iter().map(|n| n.as_slice()).collect();
                    budget.spend()?;
                    feasible_point(dim, &rows, &[])
                }
            };
            let p = p.ok_or_else(|| Error::Invariant("empty chamber".into()))?;
            cone_by_shooting(dim, &normals, &p)?
        }
        Backend::Lp => None,
    };
    let (alive, samples, interior) = match split {
        Some(x) => x,
        None => cone_by_lp(dim, &normals, budget)?,
    };
    let mut facets = Vec::new();
    let mut redundant = Vec::new();
    for (k, n) in normals.into_iter().enumerate() {
        if alive[k] {
            let src = groups[&n].clone();
            facets.push((n, src));
        } else {
            redundant.push(n);
        }
    }
    if !positive_on(ineqs.iter().map(|q| q.form.as_slice()), &interior) {
        return invariant("interior point violates a generated inequality");
    }
    Ok(Cone { facets, samples, interior, redundant })
}

type Split = (Vec<bool>, Vec<Vec<BigRational>>, Vec<BigRational>);

fn ray_sum<'a>(dim: usize, rays: impl Iterator<Item = &'a Vec<i128>>) -> Vec<BigRational> {
    let mut s = vec![BigInt::zero(); dim];
    for r in rays {
        for (a, &b) in s.iter_mut().zip(r) {
            *a += BigInt::from(b);
        }
    }
    s.into_iter().map(BigRational::from_integer).collect()
}

/// Clear denominators of a rational point, if the result fits in i128.
fn integral_point(p: &[BigRational]) -> Option<Vec<i128>> {
    let den = p.iter().fold(BigInt::from(1), |l, x| num_integer::Integer::lcm(&l, x.denom()));
    p.iter().map(|x| i128::try_from((x * &den).to_integer()).ok()).collect()
}

/// Normals vanishing first on the ray `p + t·d`, `t > 0`.
fn first_hits(normals: &[Vec<i64>], p: &[i128], d: &[i128]) -> Option<Vec<usize>> {
    // Hit time n·p / (−n·d), compared as fractions with positive
    // denominators.
    let mut best: Option<(i128, i128)> = None;
    let mut hits = Vec::new();
    for (k, n) in normals.iter().enumerate() {
        let den = dot(n, d)?.checked_neg()?;
        if den <= 0 {
            continue;
        }
        let num = dot(n, p)?;
        let ord = match best {
            None => std::cmp::Ordering::Less,
            Some((bn, bd)) => num.checked_mul(bd)?.cmp(&bn.checked_mul(den)?),
        };
        match ord {
            std::cmp::Ordering::Less => {
                best = Some((num, den));
                hits = vec![k];
            }
            std::cmp::Ordering::Equal => hits.push(k),
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(hits)
}

/// Shoot from `p` along `d`, perturbing on ties, until the first hit is a
/// single normal outside `known`.
fn shoot(normals: &[Vec<i64>], known: &[usize], p: &[i128], d: &[i128]) -> Option<usize> {
    let scale: i128 = 1 << 20;
    for k in 0..64usize {
        let aim: Vec<i128> = if k == 0 {
            d.to_vec()
        } else {
            let wiggle = (0..d.len()).map(|j| ((k * 7 + j * 13 + k * j) % 17) as i128 - 8);
            d.iter().zip(wiggle).map(|(x, u)| x.checked_mul(scale)?.checked_add(u)).collect::<Option<_>>()?
        };
        if let [h] = first_hits(normals, p, &aim)?[..] {
            if !known.contains(&h) {
                return Some(h);
            }
        }
    }
    None
}

/// Facets by ray shooting from the interior point `p`. Each shot that
/// leaves the cone first crosses exactly one facet. Once the facets found
/// so far cut out a pointed cone, its extreme rays certify the remaining
/// normals or expose a ray outside the chamber to shoot at. `None` on i128
/// overflow or if no shot isolates a new facet.
fn cone_by_shooting(dim: usize, normals: &[Vec<i64>], p: &[BigRational]) -> Result<Option<Split>> {
    match shooting(dim, normals, p) {
        Some((found, rays)) => facets_from_rays(dim, normals, &found, &rays).map(Some),
        None => Ok(None),
    }
}

fn shooting(dim: usize, normals: &[Vec<i64>], p: &[BigRational]) -> Option<(Vec<usize>, Vec<Ray>)> {
    let pi = integral_point(p)?;
    let mut found: Vec<usize> = Vec::new();
    let as_rows = |found: &[usize]| -> Vec<Vec<i128>> {
        found.iter().map(|&k| normals[k].iter().map(|&x| x as i128).collect()).collect()
    };
    while rank(&as_rows(&found))? < dim {
        let rows: Vec<&[i64]> = found.iter().map(|&k| normals[k].as_slice()).collect();
        let d = null_vector(&rows, dim)?;
        let neg: Vec<i128> = d.iter().map(|x| -x).collect();
        found.push(shoot(normals, &found, &pi, &d).or_else(|| shoot(normals, &found, &pi, &neg))?);
    }
    // A normal nonnegative on the rays of a cone stays so on any smaller
    // cone, so the scan never has to go back.
    let mut k = 0;
    loop {
        let fnormals: Vec<Vec<i64>> = found.iter().map(|&j| normals[j].clone()).collect();
        let rays = extreme_rays(dim, &fnormals)?;
        let mut outside = None;
        while k < normals.len() && outside.is_none() {
            for r in &rays {
                if dot(&normals[k], &r.coords)? < 0 {
                    outside = Some(&r.coords);
                    break;
                }
            }
            if outside.is_none() {
                k += 1;
            }
        }
        let Some(r) = outside else { return Some((found, rays)) };
        // `p` is inside and `r` violates a normal, so the way from `p` to
        // `r` leaves the chamber through a facet not yet found.
        let d: Vec<i128> = r.iter().zip(&pi).map(|(a, x)| a.checked_sub(*x)).collect::<Option<_>>()?;
        found.push(shoot(normals, &found, &pi, &d)?);
    }
}

fn facets_from_rays(dim: usize, normals: &[Vec<i64>], found: &[usize], rays: &[Ray]) -> Result<Split> {
    let mut alive = vec![false; normals.len()];
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| found[i]);
    let mut samples = Vec::with_capacity(found.len());
    for i in order {
        let tight: Vec<Vec<i128>> = rays.iter().filter(|r| r.is_tight(i)).map(|r| r.coords.clone()).collect();
        if rank(&tight) != Some(dim - 1) {
            return invariant(format!("shot normal {:?} is not a facet", normals[found[i]]));
        }
        alive[found[i]] = true;
        samples.push(ray_sum(dim, tight.iter()));
    }
    let interior = ray_sum(dim, rays.iter().map(|r| &r.coords));
    Ok((alive, samples, interior))
}

fn cone_by_lp(dim: usize, normals: &[Vec<i64>], budget: &mut Budget) -> Result<Split> {
    // Removing redundant normals as they are found keeps the LPs small and
    // is safe: a redundant normal is implied by the remaining ones.
    let mut alive = vec![true; normals.len()];
    for k in 0..normals.len() {
        let others: Vec<&[i64]> = (0..normals.len())
            .filter(|&j| j != k && alive[j])
            .map(|j| normals[j].as_slice())
            .collect();
        budget.spend()?;
        if in_cone(&others, &normals[k]) {
            alive[k] = false;
        }
    }
    let rows: Vec<&[i64]> = (0..normals.len()).filter(|&k| alive[k]).map(|k| normals[k].as_slice()).collect();
    budget.spend()?;
    let interior = feasible_point(dim, &rows, &[]).ok_or_else(|| Error::Invariant("empty chamber".into()))?;
    let mut samples = Vec::with_capacity(rows.len());
    for k in 0..rows.len() {
        let others: Vec<&[i64]> = (0..rows.len()).filter(|&j| j != k).map(|j| rows[j]).collect();
        budget.spend()?;
        let p = feasible_point(dim, &others, &[rows[k]])
            .ok_or_else(|| Error::Invariant("facet has empty relative interior".into()))?;
        samples.push(p);
    }
    Ok((alive, samples, interior))
}

/// Decide the type of the wall with the given normal.
pub fn classify_wall(g: &GroupSpec, state: &ChamberState, normal: &[i64]) -> Result<WallAction> {
    let fan = &state.fan;
    // Inequalities are deduplicated, so curves are re-read from the state.
    let mut contracted = Vec::new();
    for e in fan.interior_edges() {
        if primitive_vec(&reduced_form(&state.taut.curve_class(fan, e)?)) == normal {
            contracted.push(e);
        }
    }
    if contracted.is_empty() {
        return type_zero_splitting(g, normal);
    }
    let is_contracted = |a: usize, b: usize| fan.edge_index(a, b).is_some_and(|e| contracted.contains(&e));
    // A compact divisor mapping to a curve or a point.
    for w in fan.interior_vertices() {
        let nb = fan.neighbors_cyclic(w);
        if !nb.iter().any(|&u| is_contracted(w, u)) {
            continue;
        }
        let c = fan.vertices[w];
        let dirs: Vec<_> = nb
            .iter()
            .filter(|&&u| !is_contracted(w, u))
            .map(|&u| cross(&c, &fan.vertices[u]))
            .collect();
        if dirs.is_empty() {
            return invariant(format!("type II wall: the divisor at {c:?} is contracted to a point"));
        }
        if dirs.iter().all(|d| is_zero(&cross(d, &dirs[0]))) {
            if dirs.len() != 2 || dirs[0] == dirs[1] {
                return invariant(format!("type II wall: the divisor at {c:?} is contracted to a point"));
            }
            if let Some(&e) = contracted.iter().find(|&&e| {
                let ed = &fan.edges()[e];
                ed.a != w && ed.b != w
            }) {
                return invariant(format!("contracted edge {e} lies off the ruled divisor"));
            }
            let fibers = fiber_edges(fan, w, &contracted)?;
            return Ok(WallAction::III { divisor: w, fibers });
        }
    }
    // A noncompact divisor ruled over a curve: all contracted curves are
    // (−2,0)-curves with the −2 at a common boundary vertex.
    let mut boundary: Option<usize> = None;
    let mut all_fibres = true;
    for &e in &contracted {
        let ed = &fan.edges()[e];
        let (a, b) = fan.normal_coefficients(e)?;
        let w = match (a, b) {
            (-2, 0) => ed.a,
            (0, -2) => ed.b,
            _ => {
                all_fibres = false;
                break;
            }
        };
        if fan.is_interior_vertex(w) || boundary.is_some_and(|x| x != w) {
            all_fibres = false;
            break;
        }
        boundary = Some(w);
    }
    if all_fibres {
        if let Some(w) = boundary {
            return Ok(WallAction::III { divisor: w, fibers: contracted });
        }
    }
    for &e in &contracted {
        let deg = fan.curve_degrees(e)?;
        if deg != (-1, -1) {
            return invariant(format!("contracted curve with normal degrees {deg:?} does not fit a wall type"));
        }
    }
    Ok(WallAction::I { edges: contracted })
}

/// Contracted edges at `w` that are irreducible fibres: (−2,0) with −2 at `w`.
fn fiber_edges(fan: &Triangulation, w: usize, contracted: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &e in contracted {
        let ed = &fan.edges()[e];
        let (a, b) = fan.normal_coefficients(e)?;
        if (ed.a == w && a == -2 && b == 0) || (ed.b == w && b == -2 && a == 0) {
            out.push(e);
        }
    }
    if out.is_empty() {
        return invariant("ruled divisor has no irreducible contracted fibre");
    }
    Ok(out)
}

fn type_zero_splitting(g: &GroupSpec, normal: &[i64]) -> Result<WallAction> {
    let n = g.order();
    let mut r1 = vec![0; n];
    if normal.iter().all(|&x| x == 0 || x == 1) {
        for (i, &x) in normal.iter().enumerate() {
            r1[i + 1] = x;
        }
    } else if normal.iter().all(|&x| x == 0 || x == -1) {
        r1[0] = 1;
        for (i, &x) in normal.iter().enumerate() {
            r1[i + 1] = i64::from(x == 0);
        }
    } else {
        return Err(Error::Precondition(format!("type 0 wall {normal:?} is not the class of a subrepresentation")));
    }
    let r2 = r1.iter().map(|x| 1 - x).collect();
    Ok(WallAction::Zero { r1, r2 })
}

fn wall_type(a: &WallAction) -> WallType {
    match a {
        WallAction::Zero { .. } => WallType::Zero,
        WallAction::I { .. } => WallType::I,
        WallAction::III { .. } => WallType::III,
    }
}

/// A chamber with its inequalities and classified facets.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub state: ChamberState,
    pub inequalities: Vec<Inequality>,
    pub facets: Vec<Facet>,
    pub interior: Vec<BigRational>,
    pub redundant: Vec<Vec<i64>>,
}

/// Compute facets, samples and wall types of a state.
pub fn analyze(
    g: &GroupSpec,
    state: ChamberState,
    ineqs: Vec<Inequality>,
    hint: Option<&[BigRational]>,
    budget: &mut Budget,
) -> Result<Chamber> {
    let dim = g.order() - 1;
    let cone = chamber_cone(dim, &ineqs, hint, budget)?;
    let mut facets = Vec::with_capacity(cone.facets.len());
    let mut zero_count = 0;
    for k in 0..cone.facets.len() {
        let (normal, idx) = cone.facets[k].clone();
        let sources = idx.iter().map(|&i| ineqs[i].clone()).collect();
        let sample = cone.samples[k].clone();
        let action = classify_wall(g, &state, &normal)?;
        let label = match &action {
            WallAction::I { edges } | WallAction::III { fibers: edges, .. } => {
                format!("f_{}", g.label(state.fan.line_ratio(edges[0], g)?.2))
            }
            WallAction::Zero { .. } => {
                zero_count += 1;
                format!("w_{zero_count}")
            }
        };
        facets.push(Facet { normal, sources, wall_type: wall_type(&action), action, sample, label });
    }
    Ok(Chamber { state, inequalities: ineqs, facets, interior: cone.interior, redundant: cone.redundant })
}

/// Check that `theta0` lies on the wall `normal = 0` of the chamber cut
/// out by `forms`, on the side `normal < 0`. Either all inequalities of a
/// state or just its facet normals will do.
fn verify_crossing<'a>(forms: impl IntoIterator<Item = &'a [i64]>, normal: &[i64], theta0: &[BigRational]) -> bool {
    let neg: Vec<i64> = normal.iter().map(|x| -x).collect();
    let mut tight = false;
    for form in forms {
        let v = eval(form, theta0);
        if v.is_negative() {
            return false;
        }
        if v.is_zero() {
            if primitive_vec(form) != neg {
                return false;
            }
            tight = true;
        }
    }
    tight
}

/// A point just past the wall sample, on the side `normal < 0`, that
/// satisfies every form strictly. Assumes `verify_crossing` holds.
pub fn point_beyond(forms: &[Inequality], normal: &[i64], sample: &[BigRational]) -> Vec<BigRational> {
    // Move along −normal by half the smallest step at which a form with
    // positive value at the sample would vanish.
    let mut eps = BigRational::one();
    for q in forms {
        let a = eval(&q.form, sample);
        let b: i64 = -q.form.iter().zip(normal).map(|(x, y)| x * y).sum::<i64>();
        if a.is_positive() && b < 0 {
            let t = a / BigRational::from_integer(BigInt::from(-b));
            if t < eps {
                eps = t;
            }
        }
    }
    eps /= BigRational::from_integer(BigInt::from(2));
    sample
        .iter()
        .zip(normal)
        .map(|(x, &n)| x - &eps * BigRational::from_integer(BigInt::from(n)))
        .collect()
}

/// States on the far side of a facet, most likely first. Only type 0
/// walls can offer more than one, one per candidate unstable divisor.
pub fn crossing_candidates(g: &GroupSpec, ch: &Chamber, facet: usize) -> Result<Vec<ChamberState>> {
    let f = ch
        .facets
        .get(facet)
        .ok_or_else(|| Error::Precondition(format!("no facet {facet}; the chamber has {}", ch.facets.len())))?;
    let state = &ch.state;
    let fan = &state.fan;
    let mut provenance = state.provenance.clone();
    provenance.push(format!("{} [type {}]", f.label, f.wall_type));
    let make_state = |fan: Triangulation, taut: TautBundle| ChamberState { fan, taut, provenance: provenance.clone() };
    Ok(match &f.action {
        WallAction::I { edges } => {
            let mut new_fan = fan.clone();
            for &e in edges {
                let ed = &fan.edges()[e];
                let (a, b) = (fan.vertices[ed.a], fan.vertices[ed.b]);
                let k = new_fan
                    .vertex_index(&a)
                    .zip(new_fan.vertex_index(&b))
                    .and_then(|(a, b)| new_fan.edge_index(a, b))
                    .ok_or_else(|| Error::InvalidFlip("contracted curves are not disjoint".into()))?;
                new_fan = new_fan.flip(k)?;
            }
            let taut = state.taut.proper_transform(g, &new_fan)?;
            vec![make_state(new_fan, taut)]
        }
        WallAction::III { divisor, fibers } => {
            let degs: Vec<i64> = (0..g.order())
                .map(|rho| state.taut.degree(fan, rho, fibers[0]))
                .collect::<Result<_>>()?;
            for &e in &fibers[1..] {
                for (rho, &d) in degs.iter().enumerate() {
                    if state.taut.degree(fan, rho, e)? != d {
                        return invariant("fibres of a ruled divisor have different degrees");
                    }
                }
            }
            let taut = state.taut.type_iii_twist(g, fan, &[*divisor], &degs)?;
            vec![make_state(fan.clone(), taut)]
        }
        WallAction::Zero { r1, r2 } => type_zero_divisors(f, r1, r2)
            .into_iter()
            .map(|d| Ok(make_state(fan.clone(), state.taut.twist_by_divisor(g, fan, &d, r1)?)))
            .collect::<Result<_>>()?,
    })
}

/// A state reached across a wall, with its inequalities and a point of
/// its open chamber.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub state: ChamberState,
    pub inequalities: Vec<Inequality>,
    pub point: Vec<BigRational>,
}

impl Crossing {
    pub fn analyze(self, g: &GroupSpec, budget: &mut Budget) -> Result<Chamber> {
        analyze(g, self.state, self.inequalities, Some(&self.point), budget)
    }
}

/// Cross a facet and verify that the result is the adjacent chamber.
pub fn cross_wall(g: &GroupSpec, ch: &Chamber, facet: usize) -> Result<Crossing> {
    let f = &ch.facets.get(facet).ok_or_else(|| Error::Precondition(format!("no facet {facet}")))?;
    for s in crossing_candidates(g, ch, facet)? {
        let q = generate_inequalities(&s)?;
        if verify_crossing(q.iter().map(|x| x.form.as_slice()), &f.normal, &f.sample) {
            let point = point_beyond(&q, &f.normal, &f.sample);
            return Ok(Crossing { state: s, inequalities: q, point });
        }
    }
    invariant(format!("crossing {} does not reach an adjacent chamber", f.label))
}

/// Class modulo [R] as a positive multiple of a 0/1 class, if it is one.
fn matches_mod_r(cls: &RClass, target: &RClass, sign: i64) -> bool {
    let c: Vec<i64> = cls.iter().map(|x| sign * x).collect();
    let lo = *c.iter().min().unwrap();
    let hi = *c.iter().max().unwrap();
    hi > lo && c.iter().zip(target).all(|(&x, &t)| (x == hi) == (t == 1) && (x == hi || x == lo))
}

/// Candidate unstable divisors of a type-0 wall, most specific first.
fn type_zero_divisors(f: &Facet, r1: &RClass, r2: &RClass) -> Vec<Vec<usize>> {
    let mut exact = Vec::new();
    let mut loose = Vec::new();
    for q in &f.sources {
        let (d, target, sign) = match &q.source {
            Source::SubsheafDivisor { divisor, .. } => (divisor, r1, 1),
            Source::QuotientDivisor { divisor, .. } => (divisor, r2, 1),
            Source::Curve { .. } => continue,
        };
        if &q.cls == target {
            exact.push(d.clone());
        } else if matches_mod_r(&q.cls, target, sign) {
            loose.push(d.clone());
        }
    }
    exact.extend(loose);
    let mut seen = BTreeSet::new();
    exact.retain(|d| seen.insert(d.clone()));
    exact
}

/// Check that every tight divisor class of a type-0 facet is R1 or R2
/// modulo [R]; these are the only 0/1 splittings of the wall.
pub fn type_zero_unique(f: &Facet) -> bool {
    let WallAction::Zero { r1, r2 } = &f.action else {
        return true;
    };
    f.sources
        .iter()
        .all(|q| matches_mod_r(&q.cls, r1, 1) || matches_mod_r(&q.cls, r2, 1))
}

/// G-Hilb as a chamber state.
pub fn ghilb_state(g: &GroupSpec) -> Result<(GHilbFan, ChamberState)> {
    let gh = ghilb_fan(g)?;
    let taut = TautBundle::ghilb(g, &gh)?;
    let state = ChamberState { fan: gh.fan.clone(), taut, provenance: Vec::new() };
    Ok((gh, state))
}

/// The G-Hilb chamber, cross-checked against the inequalities predicted by
/// the marking: curves, θ(ρ) > 0 for each marking character, and the
/// canonical classes of all compact divisors.
pub fn ghilb_chamber(g: &GroupSpec, budget: &mut Budget) -> Result<(Chamber, Marking)> {
    let (gh, state) = ghilb_state(g)?;
    let mk = marking(&gh, g)?;
    let fan = &state.fan;
    let st: Vec<StarSurface> = stars(fan)?;
    let mut special = Vec::new();
    for e in fan.interior_edges() {
        special.push(make(state.taut.curve_class(fan, e)?, Sense::Positive, Source::Curve { edge: e })?);
    }
    for (&v, marks) in &mk.divisor_marks {
        for &rho in marks {
            let mut cls = vec![0; g.order()];
            cls[rho] = 1;
            special.push(make(cls, Sense::Positive, Source::SubsheafDivisor { rho, divisor: vec![v] })?);
        }
    }
    for d in nonempty_subsets(&fan.interior_vertices()) {
        let c = state.taut.canonical_class(fan, &st, 0, &d)?;
        special.push(make(c, Sense::Negative, Source::QuotientDivisor { rho: 0, divisor: d })?);
    }
    let special = dedup(special);
    let ineqs = generate_inequalities(&state)?;
    let dim = g.order() - 1;
    // Θ+ (all θ(ρ) = 1 off the trivial character) should be inside.
    let ones = vec![BigRational::one(); dim];
    let a = chamber_cone(dim, &special, Some(&ones), budget)?;
    let ch = analyze(g, state, ineqs, Some(&ones), budget)?;
    let lhs: BTreeSet<&Vec<i64>> = a.facets.iter().map(|f| &f.0).collect();
    let rhs: BTreeSet<&Vec<i64>> = ch.facets.iter().map(|f| &f.normal).collect();
    if lhs != rhs {
        return invariant("G-Hilb chamber disagrees with the marking prediction");
    }
    Ok((ch, mk))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub facet: usize,
    pub wall_type: WallType,
}

#[derive(Debug, Clone)]
pub struct ChamberGraph {
    pub chambers: Vec<Chamber>,
    pub edges: Vec<GraphEdge>,
    pub lps: usize,
    /// False when the search stopped before the frontier was exhausted.
    pub complete: bool,
}

impl ChamberGraph {
    /// Distinct fans over all chambers, sorted.
    pub fn fans(&self) -> Vec<Triangulation> {
        let mut seen = BTreeSet::new();
        let mut out: Vec<Triangulation> = self
            .chambers
            .iter()
            .filter(|c| seen.insert(c.state.fan.triangles.clone()))
            .map(|c| c.state.fan.clone())
            .collect();
        out.sort_by(|a, b| a.triangles.cmp(&b.triangles));
        out
    }

    pub fn count_by_type(&self) -> BTreeMap<WallType, usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry(e.wall_type).or_default() += 1;
        }
        m
    }

    /// Every crossing is undone by crossing back through the same
    /// hyperplane with the opposite normal.
    pub fn check_coherence(&self) -> Result<()> {
        let mut by_source: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &self.edges {
            by_source.insert((e.from, e.facet), e.to);
        }
        for e in &self.edges {
            let n = &self.chambers[e.from].facets[e.facet].normal;
            let neg: Vec<i64> = n.iter().map(|x| -x).collect();
            let back = self.chambers[e.to].facets.iter().position(|f| f.normal == neg);
            let Some(b) = back else {
                return invariant(format!("chamber {} has no facet matching the wall from {}", e.to, e.from));
            };
            if self.chambers[e.to].facets[b].wall_type != e.wall_type {
                return invariant("wall type differs between the two sides");
            }
            let back = by_source.get(&(e.to, b));
            if back.is_none() && !self.complete {
                // The far chamber's walls were never crossed.
                continue;
            }
            if back != Some(&e.from) {
                return invariant(format!("crossing back from {} does not return to {}", e.to, e.from));
            }
        }
        Ok(())
    }
}

/// A discovered state awaiting analysis. Only the distinct normals are
/// kept, enough to verify crossings into it; the inequalities themselves
/// are regenerated when it is analyzed.
struct Pending {
    state: ChamberState,
    point: Vec<BigRational>,
    normals: Vec<Vec<i64>>,
}

enum Slot {
    Pending(Pending),
    Done(Chamber),
    Taken,
}

fn pending(state: ChamberState, ineqs: &[Inequality], point: Vec<BigRational>) -> Pending {
    let normals: BTreeSet<Vec<i64>> = ineqs.iter().map(|q| primitive_vec(&q.form)).collect();
    Pending { state, point, normals: normals.into_iter().collect() }
}

/// Breadth-first search of the chamber graph from G-Hilb. Chambers in the
/// result keep their facets but drop inequality lists and facet sources.
pub fn enumerate_chambers(g: &GroupSpec, limits: &Limits) -> Result<ChamberGraph> {
    enumerate_with(g, limits, Backend::RayShooting)
}

pub fn enumerate_with(g: &GroupSpec, limits: &Limits, backend: Backend) -> Result<ChamberGraph> {
    search(g, limits, backend, |_| false)
}

/// Breadth-first search that stops as soon as every flip-reachable fan is
/// realized by some chamber. The graph is then partial, holding the
/// chambers analyzed so far and the edges between them.
pub fn realize_fans(g: &GroupSpec, limits: &Limits) -> Result<ChamberGraph> {
    let gh = ghilb_fan(g)?;
    let mut missing: BTreeSet<Vec<[usize; 3]>> =
        flip_reachable_fans(&gh.fan, limits.max_fans)?.into_iter().map(|t| t.triangles).collect();
    search(g, limits, Backend::RayShooting, |ch| {
        missing.remove(&ch.state.fan.triangles);
        missing.is_empty()
    })
}

fn search(g: &GroupSpec, limits: &Limits, backend: Backend, mut stop: impl FnMut(&Chamber) -> bool) -> Result<ChamberGraph> {
    let mut budget = Budget::with_backend(limits.max_lps, backend);
    let (_, start) = ghilb_state(g)?;
    let start_ineqs = generate_inequalities(&start)?;
    let mut ids: HashMap<StateKey, usize> = HashMap::new();
    ids.insert(start.key(), 0);
    let ones = vec![BigRational::one(); g.order() - 1];
    let mut slots = vec![Slot::Pending(pending(start, &start_ineqs, ones))];
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    let mut complete = true;
    let started = Instant::now();
    while let Some(id) = queue.pop_front() {
        if let Some(s) = limits.max_seconds {
            if started.elapsed().as_secs() >= s {
                return Err(Error::ResourceLimit(format!(
                    "chamber search exceeded {s} s after {id} chambers with {} more queued",
                    queue.len() + 1
                )));
            }
        }
        let Slot::Pending(next) = std::mem::replace(&mut slots[id], Slot::Taken) else {
            unreachable!("chambers are queued once");
        };
        let ineqs = generate_inequalities(&next.state)?;
        let mut ch = analyze(g, next.state, ineqs, Some(&next.point), &mut budget)?;
        ch.inequalities = Vec::new();
        ch.redundant = Vec::new();
        let candidates: Vec<Vec<ChamberState>> =
            (0..ch.facets.len()).map(|k| crossing_candidates(g, &ch, k)).collect::<Result<_>>()?;
        for f in ch.facets.iter_mut() {
            f.sources = Vec::new();
        }
        let finished = stop(&ch);
        let walls: Vec<(Vec<i64>, Vec<BigRational>, WallType, String)> = ch
            .facets
            .iter()
            .map(|f| (f.normal.clone(), f.sample.clone(), f.wall_type, f.label.clone()))
            .collect();
        slots[id] = Slot::Done(ch);
        if finished {
            complete = queue.is_empty() && walls.is_empty();
            break;
        }
        for (k, (normal, sample, wall_type, label)) in walls.into_iter().enumerate() {
            let mut hit = None;
            for s in candidates[k].iter() {
                let key = s.key();
                if let Some(&t) = ids.get(&key) {
                    let ok = match &slots[t] {
                        Slot::Pending(c) => verify_crossing(c.normals.iter().map(|n| n.as_slice()), &normal, &sample),
                        Slot::Done(c) => verify_crossing(c.facets.iter().map(|f| f.normal.as_slice()), &normal, &sample),
                        Slot::Taken => false,
                    };
                    if ok {
                        hit = Some(t);
                        break;
                    }
                    continue;
                }
                let q = generate_inequalities(s)?;
                if verify_crossing(q.iter().map(|x| x.form.as_slice()), &normal, &sample) {
                    let t = slots.len();
                    if t >= limits.max_chambers {
                        return Err(Error::ResourceLimit(format!("more than {} chambers", limits.max_chambers)));
                    }
                    ids.insert(key, t);
                    let point = point_beyond(&q, &normal, &sample);
                    slots.push(Slot::Pending(pending(s.clone(), &q, point)));
                    queue.push_back(t);
                    hit = Some(t);
                    break;
                }
            }
            let to = hit.ok_or_else(|| Error::Invariant(format!("crossing {label} does not reach an adjacent chamber")))?;
            edges.push(GraphEdge { from: id, to, facet: k, wall_type });
        }
    }
    let chambers: Vec<Chamber> = slots
        .into_iter()
        .map_while(|s| match s {
            Slot::Done(c) => Some(c),
            _ => None,
        })
        .collect();
    // Queue order is id order, so the analyzed chambers are a prefix.
    let n = chambers.len();
    edges.retain(|e| e.to < n);
    Ok(ChamberGraph { chambers, edges, lps: budget.lps, complete })
}

/// Fans over all chambers compared with the flip closure of G-Hilb.
pub fn realized_vs_reachable(g: &GroupSpec, graph: &ChamberGraph, limits: &Limits) -> Result<(Vec<Triangulation>, Vec<Triangulation>)> {
    let gh = ghilb_fan(g)?;
    let reach = flip_reachable_fans(&gh.fan, limits.max_fans)?;
    Ok((graph.fans(), reach))
}

/// Human-readable `Σ θ > Σ θ` rendering of a reduced form.
pub fn render_form(g: &GroupSpec, form: &[i64]) -> String {
    let side = |sign: i64| {
        let terms: Vec<String> = form
            .iter()
            .enumerate()
            .filter(|(_, &c)| c * sign > 0)
            .map(|(i, &c)| {
                let c = c.abs();
                let coef = if c == 1 { String::new() } else { c.to_string() };
                format!("{coef}θ{}", g.label(i + 1))
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    };
    format!("{} > {}", side(1), side(-1))
}

impl Chamber {
    /// Facet lines in the style `f_1: θ1+θ3+θ9 > 0 [type I]`.
    pub fn facet_lines(&self, g: &GroupSpec) -> Vec<String> {
        self.facets
            .iter()
            .map(|f| format!("{}: {} [type {}]", f.label, render_form(g, &f.normal), f.wall_type))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouplat::parse_group;

    #[test]
    fn p2_ghilb_chamber() {
        let g = parse_group("1/3(1,1,1)").unwrap();
        let mut b = Budget::new(1000);
        let (ch, _) = ghilb_chamber(&g, &mut b).unwrap();
        let mut normals: Vec<_> = ch.facets.iter().map(|f| f.normal.clone()).collect();
        normals.sort();
        assert_eq!(normals, vec![vec![0, 1], vec![1, 1]]);
        assert!(ch.redundant.contains(&vec![1, 2]));
        assert!(ch.facets.iter().all(|f| f.wall_type == WallType::Zero));
    }

    #[test]
    fn render() {
        let g = parse_group("1/11(1,2,8)").unwrap();
        let mut f = vec![0; 10];
        f[0] = 1;
        f[2] = 1;
        f[8] = 1;
        assert_eq!(render_form(&g, &f), "θ1+θ3+θ9 > 0");
        f[3] = -2;
        assert_eq!(render_form(&g, &f), "θ1+θ3+θ9 > 2θ4");
    }
}
