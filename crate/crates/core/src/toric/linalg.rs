//! Exact dense linear algebra over the rationals, sized for fans.

use num_traits::{One, Zero};

use crate::numeric::Rat;

pub fn to_rat_matrix(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect()
}

pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn dot(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Incremental row-echelon basis used to pick independent vectors greedily.
#[derive(Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl EchelonBasis {
    /// Adds `v` if it is independent of the rows so far; returns whether it was added.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = &v[*p] / &row[*p];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn det_and_inverse() {
        let m = to_rat_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(det(&m), int(-2));
        let inv = inverse(&m).unwrap();
        assert_eq!(
            inv,
            vec![vec![int(-2), int(1)], vec![rat(3, 2), rat(-1, 2)]]
        );
        assert!(inverse(&to_rat_matrix(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(
            det(&to_rat_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            int(-1)
        );
        assert_eq!(det(&[]), int(1));
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut b = EchelonBasis::default();
        assert!(b.insert(&[int(1), int(1)]));
        assert!(!b.insert(&[int(-2), int(-2)]));
        assert!(b.insert(&[int(0), int(1)]));
        assert!(!b.insert(&[int(5), int(7)]));
        assert_eq!(b.rank(), 2);
    }
}
