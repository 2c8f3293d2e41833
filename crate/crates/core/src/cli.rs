//! Command implementations behind the `mckay` binary, producing a
//! serializable [`Report`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::chambers::{
    cross_wall, enumerate_chambers, generate_inequalities, ghilb_chamber, ghilb_state, realized_vs_reachable, render_form,
    type_zero_unique, analyze, Budget, Chamber, ChamberState, Limits, WallAction,
};
use crate::error::{Error, Result};
use crate::fan::Triangulation;
use crate::grouplat::{parse_group, GroupSpec, LatticePointN};
use crate::ktheory::{is_unimodular, PairingTable};
use crate::quiver::{band, check_diamond_cover, diamonds, is_rigid, orbit_rep, to_svg, Side, SupportGraph};
use crate::reidrecipe::marking;

pub const SCHEMA: &str = "mckay-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub group: GroupReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markings: Option<MarkingReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<ChamberReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_token: Option<String>,
    /// Human-readable lines, printed to stdout.
    pub summary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub spec: String,
    pub order: usize,
    pub characters: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub r: i64,
    pub vertices: Vec<LatticePointN>,
    pub triangles: Vec<[usize; 3]>,
    pub interior_edges: Vec<EdgeReport>,
    /// r-scaled divisor coefficients of each tautological bundle.
    pub tautological: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub index: usize,
    pub ends: [usize; 2],
    pub normal_degrees: (i64, i64),
    pub character: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingReport {
    /// Vertex index with its marking characters.
    pub divisors: Vec<(usize, Vec<String>)>,
    /// Interior edge index with its character.
    pub lines: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub provenance: Vec<String>,
    pub facets: Vec<FacetReport>,
    pub redundant: Vec<String>,
    pub interior: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetReport {
    pub label: String,
    pub normal: Vec<i64>,
    pub inequality: String,
    pub wall_type: String,
    pub action: String,
    pub sample: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub chambers: usize,
    pub walls_by_type: BTreeMap<String, usize>,
    pub edges: Vec<(usize, usize, String)>,
    pub fans: usize,
    pub reachable_fans: usize,
    pub unrealized_fans: usize,
    pub lps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverReport {
    pub triangle: usize,
    pub vertex: usize,
    pub absent_arrows: Vec<(String, usize)>,
    pub diamonds: usize,
    pub splits: Vec<SplitReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub quotient: Vec<String>,
    pub ext1_dim: usize,
    pub sub_rigid: Option<bool>,
    pub quotient_rigid: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Report {
    fn new(command: &str, g: &GroupSpec) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            group: GroupReport {
                spec: g.to_string(),
                order: g.order(),
                characters: (0..g.order()).map(|i| format!("ρ{}", g.label(i))).collect(),
            },
            fan: None,
            markings: None,
            chamber: None,
            graph: None,
            quiver: None,
            checks: Vec::new(),
            state_token: None,
            summary: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Whether every check passed.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[derive(Serialize, Deserialize)]
struct Token {
    triangles: Vec<[LatticePointN; 3]>,
    coeffs: Vec<Vec<i64>>,
    provenance: Vec<String>,
}

/// Replayable encoding of a chamber state: hex of a small JSON document.
pub fn state_token(state: &ChamberState) -> String {
    let fan = &state.fan;
    let t = Token {
        triangles: fan.triangles.iter().map(|t| t.map(|i| fan.vertices[i])).collect(),
        coeffs: state.taut.bundles.iter().map(|b| b.coeffs.clone()).collect(),
        provenance: state.provenance.clone(),
    };
    hex::encode(serde_json::to_vec(&t).expect("tokens serialize"))
}

pub fn parse_state_token(g: &GroupSpec, token: &str) -> Result<ChamberState> {
    let bytes = hex::decode(token.trim()).map_err(|e| Error::Parse(format!("state token: {e}")))?;
    let t: Token = serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("state token: {e}")))?;
    let mut s = ChamberState::from_parts(g, &t.triangles, &t.coeffs)?;
    s.provenance = t.provenance;
    Ok(s)
}

/// The chamber of a seed state, or of G-Hilb when there is none.
pub fn load_chamber(g: &GroupSpec, seed: Option<&str>, budget: &mut Budget) -> Result<Chamber> {
    match seed {
        None => Ok(ghilb_chamber(g, budget)?.0),
        Some(tok) => {
            let s = parse_state_token(g, tok)?;
            let q = generate_inequalities(&s)?;
            analyze(g, s, q, None, budget)
        }
    }
}

fn ratio(x: &BigRational) -> String {
    x.to_string()
}

fn fan_report(g: &GroupSpec, state: &ChamberState) -> Result<FanReport> {
    let fan = &state.fan;
    let mut edges = Vec::new();
    for e in fan.interior_edges() {
        let ed = &fan.edges()[e];
        edges.push(EdgeReport {
            index: e,
            ends: [ed.a, ed.b],
            normal_degrees: fan.curve_degrees(e)?,
            character: format!("ρ{}", g.label(fan.line_ratio(e, g)?.2)),
        });
    }
    Ok(FanReport {
        r: fan.r,
        vertices: fan.vertices.clone(),
        triangles: fan.triangles.clone(),
        interior_edges: edges,
        tautological: state.taut.bundles.iter().map(|b| b.coeffs.clone()).collect(),
    })
}

fn action_text(g: &GroupSpec, fan: &Triangulation, a: &WallAction) -> String {
    let chars = |c: &[i64]| {
        let v: Vec<String> = c.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| format!("ρ{}", g.label(i))).collect();
        v.join("+")
    };
    let edge = |e: usize| {
        let ed = &fan.edges()[e];
        format!("{:?}-{:?}", fan.vertices[ed.a], fan.vertices[ed.b])
    };
    match a {
        WallAction::Zero { r1, r2 } => format!("destabilizing {} ⊂ R, quotient {}", chars(r1), chars(r2)),
        WallAction::I { edges } => {
            let v: Vec<String> = edges.iter().map(|&e| edge(e)).collect();
            format!("flop {}", v.join(", "))
        }
        WallAction::III { divisor, fibers } => {
            let v: Vec<String> = fibers.iter().map(|&e| edge(e)).collect();
            format!("contract D at {:?} along {}", fan.vertices[*divisor], v.join(", "))
        }
    }
}

fn chamber_report(g: &GroupSpec, ch: &Chamber) -> ChamberReport {
    let fan = &ch.state.fan;
    ChamberReport {
        provenance: ch.state.provenance.clone(),
        facets: ch
            .facets
            .iter()
            .map(|f| FacetReport {
                label: f.label.clone(),
                normal: f.normal.clone(),
                inequality: render_form(g, &f.normal),
                wall_type: f.wall_type.to_string(),
                action: action_text(g, fan, &f.action),
                sample: f.sample.iter().map(ratio).collect(),
            })
            .collect(),
        redundant: ch.redundant.iter().map(|n| render_form(g, n)).collect(),
        interior: ch.interior.iter().map(ratio).collect(),
    }
}

pub fn cmd_ghilb(spec: &str) -> Result<(Report, String)> {
    let g = parse_group(spec)?;
    let (gh, state) = ghilb_state(&g)?;
    let mk = marking(&gh, &g)?;
    let mut rep = Report::new("ghilb", &g);
    let fan = fan_report(&g, &state)?;
    rep.summary.push(format!("group {g}, |G| = {}", g.order()));
    rep.summary.push(format!("triangles = {}, interior vertices = {}", fan.triangles.len(), state.fan.interior_vertices().len()));
    rep.summary.push(format!("marked divisors = {}, marked curves = {}", mk.divisor_marks.len(), mk.line_marks.len()));
    for e in &fan.interior_edges {
        rep.summary.push(format!(
            "curve {:?}-{:?}: normal bundle {:?}, {}",
            fan.vertices[e.ends[0]], fan.vertices[e.ends[1]], e.normal_degrees, e.character
        ));
    }
    let vlabels: Vec<String> = (0..state.fan.vertices.len())
        .map(|v| match mk.divisor_marks.get(&v) {
            Some(m) => m.iter().map(|&c| format!("ρ{}", g.label(c))).collect::<Vec<_>>().join(","),
            None => String::new(),
        })
        .collect();
    let elabels: BTreeMap<usize, String> = mk.line_marks.iter().map(|(&e, &c)| (e, format!("ρ{}", g.label(c)))).collect();
    let svg = state.fan.to_svg(&vlabels, &elabels);
    rep.fan = Some(fan);
    rep.markings = Some(marking_report(&g, &mk));
    rep.state_token = Some(state_token(&state));
    Ok((rep, svg))
}

fn marking_report(g: &GroupSpec, mk: &crate::reidrecipe::Marking) -> MarkingReport {
    let lab = |c: usize| format!("ρ{}", g.label(c));
    MarkingReport {
        divisors: mk.divisor_marks.iter().map(|(&v, m)| (v, m.iter().map(|&c| lab(c)).collect())).collect(),
        lines: mk.line_marks.iter().map(|(&e, &c)| (e, lab(c))).collect(),
    }
}

pub fn cmd_markings(spec: &str) -> Result<Report> {
    let g = parse_group(spec)?;
    let (gh, state) = ghilb_state(&g)?;
    let mk = marking(&gh, &g)?;
    mk.check(&state.fan, &g)?;
    let mut rep = Report::new("markings", &g);
    let m = marking_report(&g, &mk);
    for (v, marks) in &m.divisors {
        rep.summary.push(format!("divisor {:?}: {}", state.fan.vertices[*v], marks.join(", ")));
    }
    for (e, c) in &m.lines {
        let ed = &state.fan.edges()[*e];
        rep.summary.push(format!("curve {:?}-{:?}: {c}", state.fan.vertices[ed.a], state.fan.vertices[ed.b]));
    }
    rep.markings = Some(m);
    Ok(rep)
}

pub fn cmd_chamber(spec: &str, seed: Option<&str>, limits: &Limits) -> Result<Report> {
    let g = parse_group(spec)?;
    let mut budget = Budget::new(limits.max_lps);
    let ch = load_chamber(&g, seed, &mut budget)?;
    let mut rep = Report::new("chamber", &g);
    rep.summary.push(format!("facets = {}, redundant normals = {}", ch.facets.len(), ch.redundant.len()));
    rep.summary.extend(ch.facet_lines(&g));
    rep.chamber = Some(chamber_report(&g, &ch));
    rep.state_token = Some(state_token(&ch.state));
    Ok(rep)
}

pub fn cmd_walls(spec: &str, seed: Option<&str>, limits: &Limits) -> Result<Report> {
    let g = parse_group(spec)?;
    let mut budget = Budget::new(limits.max_lps);
    let ch = load_chamber(&g, seed, &mut budget)?;
    let mut rep = Report::new("walls", &g);
    for (k, f) in ch.facets.iter().enumerate() {
        rep.summary.push(format!(
            "[{k}] {} type {}: {}",
            f.label,
            f.wall_type,
            action_text(&g, &ch.state.fan, &f.action)
        ));
    }
    rep.chamber = Some(chamber_report(&g, &ch));
    rep.state_token = Some(state_token(&ch.state));
    Ok(rep)
}

pub fn cmd_cross(spec: &str, facet: usize, seed: Option<&str>, limits: &Limits) -> Result<Report> {
    let g = parse_group(spec)?;
    let mut budget = Budget::new(limits.max_lps);
    let ch = load_chamber(&g, seed, &mut budget)?;
    let f = ch
        .facets
        .get(facet)
        .ok_or_else(|| Error::Precondition(format!("no facet {facet}; the chamber has {}", ch.facets.len())))?;
    let mut rep = Report::new("cross", &g);
    rep.summary.push(format!("crossing {} [type {}]", f.label, f.wall_type));
    let next = cross_wall(&g, &ch, facet)?.analyze(&g, &mut budget)?;
    rep.summary.push(format!("facets = {}", next.facets.len()));
    rep.summary.extend(next.facet_lines(&g));
    let token = state_token(&next.state);
    rep.summary.push(format!("state = {token}"));
    rep.fan = Some(fan_report(&g, &next.state)?);
    rep.chamber = Some(chamber_report(&g, &next));
    rep.state_token = Some(token);
    Ok(rep)
}

pub fn cmd_enumerate(spec: &str, limits: &Limits) -> Result<Report> {
    let g = parse_group(spec)?;
    let graph = enumerate_chambers(&g, limits)?;
    graph.check_coherence()?;
    let (real, reach) = realized_vs_reachable(&g, &graph, limits)?;
    let reach_keys: Vec<&Vec<[usize; 3]>> = reach.iter().map(|t| &t.triangles).collect();
    let unrealized = reach.iter().filter(|t| !real.iter().any(|u| u.triangles == t.triangles)).count();
    let extra = real.iter().filter(|t| !reach_keys.contains(&&t.triangles)).count();
    if extra > 0 {
        return Err(Error::Invariant(format!("{extra} realized fans are not flip-reachable")));
    }
    let by_type: BTreeMap<String, usize> = graph.count_by_type().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut rep = Report::new("enumerate", &g);
    rep.summary.push(format!("#chambers = {}", graph.chambers.len()));
    let walls: Vec<String> = by_type.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    rep.summary.push(format!("crossings by wall type: {}", walls.join(", ")));
    rep.summary.push(format!("#fans = {}", real.len()));
    rep.summary.push(format!("#flip-reachable fans = {}, unrealized = {unrealized}", reach.len()));
    rep.graph = Some(GraphReport {
        chambers: graph.chambers.len(),
        walls_by_type: by_type,
        edges: graph.edges.iter().map(|e| (e.from, e.to, e.wall_type.to_string())).collect(),
        fans: real.len(),
        reachable_fans: reach.len(),
        unrealized_fans: unrealized,
        lps: graph.lps,
    });
    Ok(rep)
}

/// Parse `ρ0,ρ1` style character lists.
pub fn parse_characters(g: &GroupSpec, text: &str) -> Result<Vec<usize>> {
    // Split on commas outside parentheses, so `(1,0),(2,1)` works.
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    parts.push(cur);
    parts.iter().filter(|p| !p.trim().is_empty()).map(|p| g.parse_character(p)).collect()
}

fn split_report(g: &GroupSpec, gr: &SupportGraph, r1: &[i64]) -> Result<SplitReport> {
    let b = band(gr, r1)?;
    let (sub_rigid, quotient_rigid) = if b.ext1_dim == 1 {
        (Some(is_rigid(gr, r1, Side::Sub)?), Some(is_rigid(gr, r1, Side::Quotient)?))
    } else {
        (None, None)
    };
    Ok(SplitReport {
        quotient: (0..r1.len()).filter(|&i| r1[i] == 0).map(|i| format!("ρ{}", g.label(i))).collect(),
        ext1_dim: b.ext1_dim,
        sub_rigid,
        quotient_rigid,
    })
}

fn split_line(s: &SplitReport) -> String {
    let mut line = format!("Q = {}: ext1_dim = {}", s.quotient.join("+"), s.ext1_dim);
    match (s.sub_rigid, s.quotient_rigid) {
        (Some(sr), Some(qr)) => {
            line.push_str(if qr { ", Q rigid" } else { ", Q not rigid" });
            line.push_str(if sr { ", S rigid" } else { ", S not rigid" });
        }
        _ => line.push_str(", Q not rigid, S not rigid"),
    }
    line
}

/// `orbit` is a (triangle, vertex) pair; by default the first compact
/// divisor in its first chart. `quotient` lists the characters of Q; with
/// none, every simple splitting is reported.
pub fn cmd_quiver(
    spec: &str,
    orbit: Option<(usize, usize)>,
    quotient: Option<&str>,
    seed: Option<&str>,
) -> Result<(Report, String)> {
    let g = parse_group(spec)?;
    let state = match seed {
        Some(t) => parse_state_token(&g, t)?,
        None => ghilb_state(&g)?.1,
    };
    let (t, v) = match orbit {
        Some(x) => x,
        None => {
            let v = *state
                .fan
                .interior_vertices()
                .first()
                .ok_or_else(|| Error::Precondition("no compact divisor; pass --orbit".into()))?;
            let t = state.fan.triangles.iter().position(|t| t.contains(&v)).expect("interior vertices lie on triangles");
            (t, v)
        }
    };
    let gr = orbit_rep(&g, &state, t, v)?;
    gr.check_triangle_rule()?;
    check_diamond_cover(&gr)?;
    let mut rep = Report::new("quiver", &g);
    let absent: Vec<(String, usize)> = gr.absent().into_iter().map(|(rho, i)| (format!("ρ{}", g.label(rho)), i + 1)).collect();
    rep.summary.push(format!("orbit of {:?} in triangle {t}: {} diamonds", state.fan.vertices[v], diamonds(&gr).len()));
    let mut splits = Vec::new();
    let mut svg_r1 = None;
    match quotient {
        Some(text) => {
            let q = parse_characters(&g, text)?;
            let mut r1 = vec![1i64; g.order()];
            for c in q {
                r1[c] = 0;
            }
            let s = split_report(&g, &gr, &r1)?;
            let line = split_line(&s);
            rep.summary.push(line.split_once(": ").map(|x| x.1.to_string()).unwrap_or(line));
            splits.push(s);
            svg_r1 = Some(r1);
        }
        None => {
            for sp in crate::quiver::subsheaf_subsets(&gr) {
                if !(sp.s_connected && sp.q_connected) {
                    continue;
                }
                let s = split_report(&g, &gr, &sp.r1)?;
                rep.summary.push(split_line(&s));
                splits.push(s);
            }
        }
    }
    let svg = to_svg(&g, &gr, svg_r1.as_deref(), 6);
    rep.quiver = Some(QuiverReport { triangle: t, vertex: v, absent_arrows: absent, diamonds: diamonds(&gr).len(), splits });
    Ok((rep, svg))
}

fn check(rep: &mut Report, name: &str, r: Result<String>) {
    let (ok, detail) = match r {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    rep.summary.push(format!("{} {name}{}", if ok { "ok  " } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(": {detail}") }));
    rep.checks.push(Check { name: name.to_string(), ok, detail });
}

/// Internal consistency checks on G-Hilb and its chamber.
pub fn cmd_verify(spec: &str, limits: &Limits) -> Result<Report> {
    let g = parse_group(spec)?;
    let (gh, state) = ghilb_state(&g)?;
    let mut rep = Report::new("verify", &g);
    check(&mut rep, "fan is a basic triangulation", state.fan.validate().map(|_| String::new()));
    check(
        &mut rep,
        "G-graphs",
        gh.graphs.iter().try_for_each(|gm| gm.validate(&g)).map(|_| format!("{} graphs", gh.graphs.len())),
    );
    check(&mut rep, "tautological bundles", state.taut.validate(&g, &state.fan).map(|_| String::new()));
    check(&mut rep, "markings", marking(&gh, &g).and_then(|mk| mk.check(&state.fan, &g)).map(|_| String::new()));
    check(&mut rep, "degrees on flopping and ruled curves lie in {0,1}", degree_bounds(&g, &state));
    check(
        &mut rep,
        "pairing table unimodular",
        if is_unimodular(&PairingTable::new(&g)) { Ok(String::new()) } else { Err(Error::Invariant("determinant is not ±1".into())) },
    );
    let mut budget = Budget::new(limits.max_lps);
    match ghilb_chamber(&g, &mut budget) {
        Ok((ch, _)) => {
            check(&mut rep, "G-Hilb chamber matches the marking prediction", Ok(format!("{} facets", ch.facets.len())));
            let ones = vec![BigRational::one(); g.order() - 1];
            let inside = ch.facets.iter().all(|f| {
                f.normal.iter().zip(&ones).fold(BigRational::from_integer(0.into()), |s, (&a, x)| s + x * BigRational::from_integer(a.into())).is_positive()
            });
            check(
                &mut rep,
                "Θ+ point inside the G-Hilb chamber",
                if inside { Ok(String::new()) } else { Err(Error::Invariant("(1,…,1) violates a facet".into())) },
            );
            check(
                &mut rep,
                "type-0 splittings unique",
                if ch.facets.iter().all(type_zero_unique) { Ok(String::new()) } else { Err(Error::Invariant("ambiguous 0/1 class".into())) },
            );
        }
        Err(e) => check(&mut rep, "G-Hilb chamber matches the marking prediction", Err(e)),
    }
    Ok(rep)
}

/// Every tautological degree on a (−1,−1) or (−2,0) interior curve is 0 or 1.
pub fn degree_bounds(g: &GroupSpec, state: &ChamberState) -> Result<String> {
    let fan = &state.fan;
    let mut n = 0;
    for e in fan.interior_edges() {
        let d = fan.curve_degrees(e)?;
        if d != (-1, -1) && d != (-2, 0) {
            continue;
        }
        n += 1;
        for rho in 0..g.order() {
            let k = state.taut.degree(fan, rho, e)?;
            if !(0..=1).contains(&k) {
                return Err(Error::Invariant(format!("degree {k} of ρ{} on curve {e}", g.label(rho))));
            }
        }
    }
    Ok(format!("{n} curves"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_round_trip() {
        let g = parse_group("1/6(1,2,3)").unwrap();
        let (_, s) = ghilb_state(&g).unwrap();
        let back = parse_state_token(&g, &state_token(&s)).unwrap();
        assert_eq!(back.key(), s.key());
        assert!(parse_state_token(&g, "zz").is_err());
    }

    #[test]
    fn character_lists() {
        let g = parse_group("1/6(1,1,4)+1/2(1,0,1)").unwrap();
        let cs = parse_characters(&g, "(0,0),(4,0)").unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(g.label(cs[1]), "(4,0)");
    }
}
