//! Small integer-lattice helpers on `i64` vectors.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |acc, &x| acc.gcd(&x))
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    dot(a, &cross(b, c))
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub fn to_i64(alpha: &[u32]) -> Vec<i64> {
    alpha.iter().map(|&a| a as i64).collect()
}

/// Rank over ℚ, by fraction-free elimination in `i128`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            for j in c..cols {
                m[i][j] = m[i][j] * a - m[r][j] * b;
            }
            let g = m[i].iter().fold(0i128, |acc, &x| acc.gcd(&x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Gcd of all maximal minors of a `k × n` matrix given by its rows (`k ≤ n ≤ 3`).
pub fn minors_gcd(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    let n = rows[0].len();
    let cols: Vec<Vec<usize>> = subsets(n, k);
    let mut g = 0;
    for cs in cols {
        let minor: Vec<Vec<i64>> = rows.iter().map(|r| cs.iter().map(|&c| r[c]).collect()).collect();
        g = gcd(g, small_det(&minor));
    }
    g
}

pub fn small_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => det2(&m[0], &m[1]),
        3 => det3(&m[0], &m[1], &m[2]),
        _ => panic!("determinant of size {} not supported", m.len()),
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Twice the area of a convex polygon through the given planar points (their hull).
pub fn hull_double_area(points: &[(i64, i64)]) -> i64 {
    let hull = convex_hull(points);
    let m = hull.len();
    if m < 3 {
        return 0;
    }
    let mut s = 0;
    for i in 0..m {
        let (x1, y1) = hull[i];
        let (x2, y2) = hull[(i + 1) % m];
        s += x1 * y2 - x2 * y1;
    }
    s.abs()
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_and_minors() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(minors_gcd(&[vec![21, 14, 6], vec![1, 0, 0]]), 2);
        assert_eq!(minors_gcd(&[vec![1, 0], vec![1, 2]]), 2);
    }

    #[test]
    fn hull_area() {
        let sq = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)];
        assert_eq!(hull_double_area(&sq), 8);
        assert_eq!(convex_hull(&sq).len(), 4);
        assert_eq!(ext_gcd(4, 6).0, 2);
    }
}
