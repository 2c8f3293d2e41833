//! Small exact integer helpers for 3-dimensional lattices.

use num_integer::Integer;

pub type V3 = [i64; 3];

pub fn dot(a: &V3, b: &V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &V3, b: &V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn add(a: &V3, b: &V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &V3, b: &V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(k: i64, a: &V3) -> V3 {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn det3(a: &V3, b: &V3, c: &V3) -> i64 {
    dot(a, &cross(b, c))
}

pub fn is_zero(a: &V3) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(a: &V3) -> V3 {
    let g = a[0].gcd(&a[1]).gcd(&a[2]);
    if g == 0 {
        *a
    } else {
        [a[0] / g, a[1] / g, a[2] / g]
    }
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Solve `x*a + y*b = c` for integers, where `a`, `b` are independent.
/// Returns `None` when there is no exact integral solution.
pub fn solve_pair(a: &V3, b: &V3, c: &V3) -> Option<(i64, i64)> {
    let n = cross(a, b);
    let nn = dot(&n, &n);
    if nn == 0 {
        return None;
    }
    // x = <c x b, n>/|n|^2, y = <a x c, n>/|n|^2
    let xn = dot(&cross(c, b), &n);
    let yn = dot(&cross(a, c), &n);
    if xn % nn != 0 || yn % nn != 0 {
        return None;
    }
    let (x, y) = (xn / nn, yn / nn);
    if add(&scale(x, a), &scale(y, b)) != *c {
        return None;
    }
    Some((x, y))
}

/// Solve `rows · m = rhs` for `m` exactly; `None` if singular or non-integral.
pub fn solve3(rows: &[V3; 3], rhs: &V3) -> Option<V3> {
    let d = det3(&rows[0], &rows[1], &rows[2]);
    if d == 0 {
        return None;
    }
    // Cramer: columns of the adjugate are cross products of row pairs.
    let c0 = cross(&rows[1], &rows[2]);
    let c1 = cross(&rows[2], &rows[0]);
    let c2 = cross(&rows[0], &rows[1]);
    let mut out = [0i64; 3];
    for k in 0..3 {
        let num = c0[k] * rhs[0] + c1[k] * rhs[1] + c2[k] * rhs[2];
        if num % d != 0 {
            return None;
        }
        out[k] = num / d;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve3_roundtrip() {
        let rows = [[3, 0, 0], [0, 3, 0], [1, 1, 1]];
        let m = [2, -1, 5];
        let rhs = [dot(&rows[0], &m), dot(&rows[1], &m), dot(&rows[2], &m)];
        assert_eq!(solve3(&rows, &rhs), Some(m));
    }

    #[test]
    fn solve_pair_detects_non_integral() {
        assert_eq!(solve_pair(&[2, 0, 0], &[0, 1, 0], &[1, 1, 0]), None);
        assert_eq!(solve_pair(&[2, 0, 0], &[0, 1, 0], &[4, -3, 0]), Some((2, -3)));
    }
}
