//! Extreme rays of a pointed cone `{θ : n·θ ≥ 0}` by the double description
//! method, with the combinatorial adjacency test.
//!
//! Ray coordinates are kept primitive in checked `i128`; an overflow aborts
//! with `None` so the caller can fall back to LP.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub coords: Vec<i128>,
    /// Bit `k` set when constraint `k` vanishes on the ray.
    zeros: Vec<u64>,
}

impl Ray {
    pub fn is_tight(&self, k: usize) -> bool {
        self.zeros[k / 64] >> (k % 64) & 1 == 1
    }
}

pub fn dot(n: &[i64], r: &[i128]) -> Option<i128> {
    n.iter().zip(r).try_fold(0i128, |s, (&a, &b)| s.checked_add((a as i128).checked_mul(b)?))
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Exact rank of integer vectors by fraction-free elimination.
pub fn rank(rows: &[Vec<i128>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            for j in c..cols {
                a[i][j] = a[i][j].checked_mul(x)?.checked_sub(a[r][j].checked_mul(y)?)?;
            }
            primitive(&mut a[i]);
        }
        r += 1;
    }
    Some(r)
}

/// A nonzero integer vector orthogonal to all `rows`, if the rows do not
/// span Q^d.
pub fn null_vector(rows: &[&[i64]], d: usize) -> Option<Vec<i128>> {
    // Reduced echelon form, then set the first free coordinate to the lcm
    // of the pivots and the other free coordinates to zero.
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            for j in 0..d {
                a[i][j] = a[i][j].checked_mul(x)?.checked_sub(a[r][j].checked_mul(y)?)?;
            }
            primitive(&mut a[i]);
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..d).find(|c| !pivots.contains(c))?;
    let mut scale: i128 = 1;
    for (i, &p) in pivots.iter().enumerate() {
        let l = a[i][p].abs();
        scale = scale.checked_div(gcd_i128(scale, l))?.checked_mul(l)?;
    }
    let mut v = vec![0i128; d];
    v[free] = scale;
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = (-a[i][free]).checked_mul(scale / a[i][p])?;
    }
    primitive(&mut v);
    Some(v)
}

/// Kernel vector of `d−1` independent rows oriented so that
/// `sign_row · v > 0`.
fn kernel_vector(rows: &[&[i64]], sign_row: &[i64]) -> Option<Vec<i128>> {
    let mut v = null_vector(rows, sign_row.len())?;
    if dot(sign_row, &v)? < 0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Some(v)
}

/// Extreme rays of `{θ ∈ Q^d : n·θ ≥ 0 for n in normals}`. Requires the
/// normals to span Q^d. Returns `None` on overflow or if they do not.
pub fn extreme_rays(d: usize, normals: &[Vec<i64>]) -> Option<Vec<Ray>> {
    let m = normals.len();
    let words = m.div_ceil(64);
    // Greedy basis of normals.
    let mut basis: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<i128>> = Vec::new();
    for (k, n) in normals.iter().enumerate() {
        let mut trial = acc.clone();
        trial.push(n.iter().map(|&x| x as i128).collect());
        if rank(&trial)? == trial.len() {
            acc = trial;
            basis.push(k);
            if basis.len() == d {
                break;
            }
        }
    }
    if basis.len() < d {
        return None;
    }
    let mut rays = Vec::with_capacity(d);
    for i in 0..d {
        let rows: Vec<&[i64]> = (0..d).filter(|&j| j != i).map(|j| normals[basis[j]].as_slice()).collect();
        let coords = kernel_vector(&rows, &normals[basis[i]])?;
        let mut zeros = vec![0u64; words];
        for (j, &b) in basis.iter().enumerate() {
            if j != i {
                zeros[b / 64] |= 1 << (b % 64);
            }
        }
        rays.push(Ray { coords, zeros });
    }
    let in_basis: Vec<bool> = (0..m).map(|k| basis.contains(&k)).collect();
    for k in 0..m {
        if in_basis[k] {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot(&normals[k], &r.coords)).collect::<Option<_>>()?;
        if vals.iter().all(|&v| v >= 0) {
            for (r, &v) in rays.iter_mut().zip(&vals) {
                if v == 0 {
                    r.zeros[k / 64] |= 1 << (k % 64);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[q].zeros).map(|(a, b)| a & b).collect();
                let count: u32 = common.iter().map(|w| w.count_ones()).sum();
                if (count as usize) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !subset(&common, &r.zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let mut coords: Vec<i128> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(&a, &b)| vq.checked_mul(a)?.checked_add(vp.checked_mul(b)?))
                    .collect::<Option<_>>()?;
                primitive(&mut coords);
                let mut zeros = common;
                zeros[k / 64] |= 1 << (k % 64);
                fresh.push(Ray { coords, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] == 0 {
                r.zeros[k / 64] |= 1 << (k % 64);
            }
            if vals[i] >= 0 {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Some(rays)
}
