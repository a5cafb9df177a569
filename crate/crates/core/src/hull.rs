//! Exact integer convex-hull helpers for small dimensions.
//!
//! Facets are found by enumerating hyperplanes spanned by a base point and
//! `d - 1` directions, keeping those with every point on one side. This is
//! `O(m^d)` and intended for `d <= 6` with a few dozen points.

use std::collections::BTreeMap;

use num_integer::Integer;

/// Determinant of a square integer matrix (Bareiss elimination).
pub(crate) fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A vector orthogonal to the `d - 1` given directions in `Z^d` (the
/// generalized cross product); zero iff the directions are dependent.
pub(crate) fn normal(dirs: &[Vec<i128>], d: usize) -> Vec<i128> {
    debug_assert_eq!(dirs.len() + 1, d);
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<i128>> = dirs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

pub(crate) fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &a| g.gcd(&a));
    if g > 1 {
        for a in v.iter_mut() {
            *a /= g;
        }
    }
}

pub(crate) fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of an integer matrix.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
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
            for j in 0..cols {
                a[i][j] = a[i][j] * x - a[r][j] * y;
            }
            primitive(&mut a[i]);
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Calls `f` with every `k`-subset of `0..m` in lexicographic order.
pub(crate) fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// A facet hyperplane `⟨normal, x⟩ = rhs` of a bounded polytope, with every
/// point satisfying `⟨normal, x⟩ >= rhs`.
#[derive(Clone, Debug)]
pub(crate) struct BoundedFacet {
    pub normal: Vec<i128>,
    pub tight: Vec<usize>,
}

/// Facets of the convex hull of full-dimensional integer points in `Z^d`.
pub(crate) fn bounded_facets(points: &[Vec<i128>]) -> Vec<BoundedFacet> {
    let d = points[0].len();
    let m = points.len();
    let mut found: BTreeMap<(Vec<i128>, i128), Vec<usize>> = BTreeMap::new();
    for base in 0..m {
        let later: Vec<usize> = (base + 1..m).collect();
        for_each_subset(later.len(), d - 1, |sel| {
            let dirs: Vec<Vec<i128>> = sel
                .iter()
                .map(|&s| {
                    let q = &points[later[s]];
                    q.iter().zip(&points[base]).map(|(a, b)| a - b).collect()
                })
                .collect();
            let mut v = normal(&dirs, d);
            if v.iter().all(|&a| a == 0) {
                return;
            }
            primitive(&mut v);
            let c = dot(&v, &points[base]);
            let (mut above, mut below) = (false, false);
            for p in points {
                let s = dot(&v, p) - c;
                above |= s > 0;
                below |= s < 0;
            }
            if above && below {
                return;
            }
            let (v, c) = if below {
                (v.iter().map(|a| -a).collect::<Vec<_>>(), -c)
            } else {
                (v, c)
            };
            found.entry((v.clone(), c)).or_insert_with(|| {
                (0..m).filter(|&i| dot(&v, &points[i]) == c).collect()
            });
        });
    }
    found
        .into_iter()
        .map(|((normal, _), tight)| BoundedFacet { normal, tight })
        .collect()
}

/// Triangulates the convex hull of full-dimensional integer points in `Z^d`
/// by recursive pulling from the lexicographically smallest point. Each
/// simplex is returned as `d + 1` indices into `points`.
pub(crate) fn triangulate(points: &[Vec<i128>]) -> Vec<Vec<usize>> {
    let d = points[0].len();
    if d == 1 {
        let lo = (0..points.len()).min_by_key(|&i| points[i][0]).expect("nonempty");
        let hi = (0..points.len()).max_by_key(|&i| points[i][0]).expect("nonempty");
        return if points[lo][0] == points[hi][0] { vec![] } else { vec![vec![lo, hi]] };
    }
    let apex = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).expect("nonempty");
    let mut out = Vec::new();
    for facet in bounded_facets(points) {
        if facet.tight.contains(&apex) {
            continue;
        }
        // Dropping a coordinate where the normal is nonzero is injective on
        // the facet hyperplane.
        let k = facet.normal.iter().position(|&a| a != 0).expect("nonzero normal");
        let projected: Vec<Vec<i128>> = facet
            .tight
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        for simplex in triangulate(&projected) {
            let mut s: Vec<usize> = simplex.into_iter().map(|i| facet.tight[i]).collect();
            s.push(apex);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i128]]) -> Vec<Vec<i128>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    fn simplex_volume_times_factorial(points: &[Vec<i128>], s: &[usize]) -> i128 {
        let base = &points[s[0]];
        let rows: Vec<Vec<i128>> = s[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        det(&rows).abs()
    }

    #[test]
    fn determinants_and_normals() {
        assert_eq!(det(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 4]]), -4);
        let n = normal(&[vec![-2, 4]], 2);
        assert_eq!(dot(&n, &[-2, 4]), 0);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
    }

    #[test]
    fn square_triangulates_into_two_triangles() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
        let tri = triangulate(&p);
        let area2: i128 = tri.iter().map(|s| simplex_volume_times_factorial(&p, s)).sum();
        assert_eq!(area2, 8);
    }

    #[test]
    fn cube_volume() {
        let mut p = Vec::new();
        for a in [0, 3] {
            for b in [0, 3] {
                for c in [0, 3] {
                    p.push(vec![a, b, c]);
                }
            }
        }
        let tri = triangulate(&p);
        let vol6: i128 = tri.iter().map(|s| simplex_volume_times_factorial(&p, s)).sum();
        assert_eq!(vol6, 27 * 6);
    }

    #[test]
    fn subsets() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
