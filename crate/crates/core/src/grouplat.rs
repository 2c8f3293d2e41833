//! Groups, characters and the lattices N ⊃ Z³ and M ⊂ Z³.
//!
//! A group is a product of cyclic factors `1/n(a,b,c)` acting diagonally on
//! C³. Characters are tuples of residues and are also addressed by a dense
//! index in `0..r` (mixed radix, first factor most significant), so that for a
//! cyclic group the index of ρ_i is `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{dot, V3};
use crate::error::{Error, Result};

/// Laurent exponent of x^a y^b z^c.
pub type Exponent = V3;

/// r-scaled point of N: `c = r·v`.
pub type LatticePointN = V3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub order: i64,
    pub weights: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
    pub r: i64,
}

/// A character of G, one residue per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    Corner,
    Edge,
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuniorPoint {
    pub c: LatticePointN,
    pub kind: PointKind,
}

/// Parse `1/11(1,2,8)` or `1/6(1,1,4)+1/2(1,0,1)`. Whitespace is ignored.
pub fn parse_group(spec: &str) -> Result<GroupSpec> {
    let text: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let mut factors = Vec::new();
    for term in text.split('+') {
        factors.push(parse_term(term)?);
    }
    GroupSpec::new(factors)
}

fn parse_term(term: &str) -> Result<Factor> {
    let bad = || Error::Parse(format!("malformed term `{term}`, expected 1/n(a,b,c)"));
    let rest = term.strip_prefix("1/").ok_or_else(bad)?;
    let open = rest.find('(').ok_or_else(bad)?;
    let body = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let order: i64 = rest[..open].parse().map_err(|_| bad())?;
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut w = [0i64; 3];
    for (k, p) in parts.iter().enumerate() {
        w[k] = p.parse().map_err(|_| bad())?;
    }
    Ok(Factor { order, weights: w })
}

impl GroupSpec {
    /// Validate and normalize factors (weights reduced mod the order).
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Validation("no factors".into()));
        }
        let mut norm = Vec::with_capacity(factors.len());
        let mut r: i64 = 1;
        for f in factors {
            if f.order <= 0 {
                return Err(Error::Validation(format!("order must be positive, got {}", f.order)));
            }
            let w = f.weights.map(|x| x.rem_euclid(f.order));
            if (w[0] + w[1] + w[2]) % f.order != 0 {
                return Err(Error::Validation(format!(
                    "weights ({},{},{}) do not sum to 0 mod {}",
                    f.weights[0], f.weights[1], f.weights[2], f.order
                )));
            }
            r = r
                .checked_mul(f.order)
                .filter(|&r| r <= 100_000)
                .ok_or_else(|| Error::Validation("group order too large".into()))?;
            norm.push(Factor { order: f.order, weights: w });
        }
        let g = GroupSpec { factors: norm, r };
        // The factors must generate a group of order r acting faithfully.
        let mut seen = std::collections::HashSet::new();
        for idx in 0..g.r as usize {
            if !seen.insert(g.element_coords(&g.element(idx))) {
                return Err(Error::Validation(
                    "factors do not generate a faithful group of order equal to the product of orders".into(),
                ));
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.r as usize
    }

    /// Character weights of x, y, z as dense indices.
    pub fn coordinate_characters(&self) -> [usize; 3] {
        [
            self.index_of_exponent(&[1, 0, 0]),
            self.index_of_exponent(&[0, 1, 0]),
            self.index_of_exponent(&[0, 0, 1]),
        ]
    }

    /// Dense index of a character.
    pub fn index(&self, ch: &Character) -> usize {
        let mut idx = 0i64;
        for (f, &c) in self.factors.iter().zip(&ch.0) {
            idx = idx * f.order + c.rem_euclid(f.order);
        }
        idx as usize
    }

    /// Character with the given dense index.
    pub fn character(&self, mut idx: usize) -> Character {
        let mut res = vec![0i64; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            res[k] = (idx as i64) % f.order;
            idx /= f.order as usize;
        }
        Character(res)
    }

    pub fn characters(&self) -> Vec<Character> {
        (0..self.order()).map(|i| self.character(i)).collect()
    }

    /// Weight of a Laurent monomial.
    pub fn weight(&self, e: &Exponent) -> Character {
        Character(
            self.factors
                .iter()
                .map(|f| dot(e, &f.weights).rem_euclid(f.order))
                .collect(),
        )
    }

    pub fn index_of_exponent(&self, e: &Exponent) -> usize {
        let mut idx = 0i64;
        for f in &self.factors {
            idx = idx * f.order + dot(e, &f.weights).rem_euclid(f.order);
        }
        idx as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0usize, 1usize);
        for f in self.factors.iter().rev() {
            let n = f.order as usize;
            out += ((a % n + b % n) % n) * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut a = a;
        let (mut out, mut place) = (0usize, 1usize);
        for f in self.factors.iter().rev() {
            let n = f.order as usize;
            out += ((n - a % n) % n) * place;
            place *= n;
            a /= n;
        }
        out
    }

    /// Group elements are tuples of exponents, addressed like characters.
    pub fn element(&self, idx: usize) -> Vec<i64> {
        self.character(idx).0
    }

    /// r-scaled coordinates of the element: r·(fractional parts of its angles).
    pub fn element_coords(&self, k: &[i64]) -> LatticePointN {
        let mut c = [0i64; 3];
        for j in 0..3 {
            let mut s = 0i64;
            for (f, &kf) in self.factors.iter().zip(k) {
                s += kf * f.weights[j] * (self.r / f.order);
            }
            c[j] = s.rem_euclid(self.r);
        }
        c
    }

    /// Label of a character for display: `3` for cyclic groups, `(4,0)` otherwise.
    pub fn label(&self, idx: usize) -> String {
        let ch = self.character(idx);
        if ch.0.len() == 1 {
            format!("{}", ch.0[0])
        } else {
            let parts: Vec<String> = ch.0.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Parse a character label such as `ρ3`, `3`, `r3`, `(4,0)` or `ρ(4,0)`.
    pub fn parse_character(&self, text: &str) -> Result<usize> {
        let t = text.trim().trim_start_matches('ρ').trim_start_matches("rho").trim_start_matches('r');
        let t = t.trim_start_matches('_');
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<i64>, _> = inner.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("bad character `{text}`")))?;
        if parts.len() != self.factors.len() {
            return Err(Error::Parse(format!("character `{text}` has wrong arity")));
        }
        Ok(self.index(&Character(parts)))
    }

    /// Upper triangular (Hermite) basis of the invariant lattice M.
    pub fn invariant_lattice_basis(&self) -> [Exponent; 3] {
        let r = self.r;
        let inv = |e: &Exponent| self.index_of_exponent(e) == 0;
        let a33 = (1..=r).find(|&z| inv(&[0, 0, z])).unwrap_or(r);
        let (a22, a23) = (1..=r)
            .find_map(|y| (0..a33).find(|&z| inv(&[0, y, z])).map(|z| (y, z)))
            .unwrap_or((r, 0));
        let (a11, a12, a13) = (1..=r)
            .find_map(|x| {
                (0..a22).find_map(|y| (0..a33).find(|&z| inv(&[x, y, z])).map(|z| (y, z)))
                    .map(|(y, z)| (x, y, z))
            })
            .unwrap_or((r, 0, 0));
        [[a11, a12, a13], [0, a22, a23], [0, 0, a33]]
    }

    /// Reduce an exponent modulo M into the Hermite fundamental domain.
    pub fn reduce_mod_m(&self, e: &Exponent) -> Exponent {
        let b = self.invariant_lattice_basis();
        reduce_with_basis(&b, e)
    }

    /// Junior simplex lattice points: age-one elements plus the corners.
    pub fn junior_points(&self) -> Vec<JuniorPoint> {
        let r = self.r;
        let mut pts: Vec<LatticePointN> = vec![[r, 0, 0], [0, r, 0], [0, 0, r]];
        for idx in 1..self.order() {
            let c = self.element_coords(&self.element(idx));
            if c[0] + c[1] + c[2] == r {
                pts.push(c);
            }
        }
        pts.sort();
        pts.dedup();
        pts.into_iter()
            .map(|c| {
                let zeros = c.iter().filter(|&&x| x == 0).count();
                let kind = match zeros {
                    2 => PointKind::Corner,
                    1 => PointKind::Edge,
                    _ => PointKind::Interior,
                };
                JuniorPoint { c, kind }
            })
            .collect()
    }
}

/// Reduce `e` into the fundamental domain of an upper triangular basis.
pub fn reduce_with_basis(b: &[Exponent; 3], e: &Exponent) -> Exponent {
    let mut v = *e;
    for k in 0..3 {
        let q = v[k].div_euclid(b[k][k]);
        for j in 0..3 {
            v[j] -= q * b[k][j];
        }
    }
    v
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("1/{}({},{},{})", x.order, x.weights[0], x.weights[1], x.weights[2]))
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}
