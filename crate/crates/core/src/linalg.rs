//! Dense linear algebra over a field.

use crate::algebra::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<E> {
    None,
    Unique(Vec<E>),
    /// A particular solution and the kernel dimension.
    Many(Vec<E>, usize),
}

/// Row reduction in place; returns the pivot columns.
pub fn row_reduce<K: Field>(k: &K, m: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !k.is_zero(&row[c]) {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b`.
pub fn solve<K: Field>(k: &K, a: &[Vec<K::Elem>], b: &[K::Elem]) -> Solution<K::Elem> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<K::Elem>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = row_reduce(k, &mut m);
    if pivots.last() == Some(&n) {
        return Solution::None;
    }
    let mut x = vec![k.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    if pivots.len() == n {
        Solution::Unique(x)
    } else {
        Solution::Many(x, n - pivots.len())
    }
}

pub fn rank<K: Field>(k: &K, a: &[Vec<K::Elem>]) -> usize {
    let mut m = a.to_vec();
    row_reduce(k, &mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, FqElem};

    #[test]
    fn small_systems() {
        let f3 = Fq::new(3, 1).unwrap();
        let e = |v: u8| FqElem(v);
        let a = vec![vec![e(1), e(1)], vec![e(1), e(2)]];
        assert_eq!(solve(&f3, &a, &[e(2), e(0)]), Solution::Unique(vec![e(1), e(1)]));
        let s = vec![vec![e(1), e(1)], vec![e(2), e(2)]];
        assert!(matches!(solve(&f3, &s, &[e(1), e(2)]), Solution::Many(_, 1)));
        assert_eq!(solve(&f3, &s, &[e(1), e(1)]), Solution::None);
        assert_eq!(rank(&f3, &s), 1);
    }
}
