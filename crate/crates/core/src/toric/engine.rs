use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::fan::Fan;
use super::linalg::EchelonBasis;
use crate::error::{Error, Result};
use crate::numeric::Rat;

/// A torus-invariant divisor `sum c_i D_i`, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricClass(Vec<Rat>);

impl ToricClass {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        ToricClass(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ToricClass(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    /// The prime divisor `D_i`.
    pub fn ray(num_rays: usize, i: usize) -> Self {
        let mut c = vec![Rat::zero(); num_rays];
        c[i] = Rat::from_integer(1.into());
        ToricClass(c)
    }

    /// The principal divisor `sum <m, u_i> D_i`.
    pub fn principal(fan: &Fan, m: &[Rat]) -> Self {
        ToricClass((0..fan.num_rays()).map(|i| fan.pair_ray(m, i)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn combine(&self, a: &Rat, other: &ToricClass, b: &Rat) -> Self {
        assert_eq!(self.0.len(), other.0.len());
        ToricClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn add(&self, other: &ToricClass) -> Self {
        let one = Rat::from_integer(1.into());
        self.combine(&one, other, &one)
    }

    pub(crate) fn check(&self, fan: &Fan) -> Result<()> {
        if self.0.len() != fan.num_rays() {
            return Err(Error::DimensionMismatch {
                expected: fan.num_rays(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// Representative whose coefficients vanish on the first `dim` independent rays.
    pub fn canonical(&self, fan: &Fan) -> Result<Self> {
        self.check(fan)?;
        let n = fan.dim();
        let mut basis = EchelonBasis::default();
        let mut pivots = Vec::with_capacity(n);
        for i in 0..fan.num_rays() {
            if basis.insert(&fan.ray_rat(i)) {
                pivots.push(i);
                if pivots.len() == n {
                    break;
                }
            }
        }
        // solve <m, u_k> = -c_k on the pivot rays
        let u: Vec<Vec<Rat>> = pivots.iter().map(|&i| fan.ray_rat(i)).collect();
        let inv = super::linalg::inverse(&u).expect("complete fan has full-rank rays");
        let rhs: Vec<Rat> = pivots.iter().map(|&i| -&self.0[i]).collect();
        let m = super::linalg::mat_vec(&inv, &rhs);
        let shifted = self.add(&ToricClass::principal(fan, &m));
        debug_assert!(pivots.iter().all(|&i| shifted.0[i].is_zero()));
        Ok(shifted)
    }

    pub fn linearly_equivalent(&self, other: &ToricClass, fan: &Fan) -> Result<bool> {
        Ok(self.canonical(fan)? == other.canonical(fan)?)
    }
}

impl fmt::Display for ToricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Intersection numbers on the toric manifold of a fan, memoized per monomial.
pub struct Intersector<'a> {
    fan: &'a Fan,
    memo: HashMap<Vec<usize>, Rat>,
}

impl<'a> Intersector<'a> {
    pub fn new(fan: &'a Fan) -> Self {
        Intersector {
            fan,
            memo: HashMap::new(),
        }
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    /// `(D_{i_1} ... D_{i_n})` for a multiset of `dim` ray indices.
    pub fn monomial(&mut self, rays: &[usize]) -> Rat {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.monomial_sorted(key)
    }

    fn monomial_sorted(&mut self, key: Vec<usize>) -> Rat {
        debug_assert_eq!(key.len(), self.fan.dim());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut support = key.clone();
        support.dedup();
        let value = match self.fan.cone_containing(&support) {
            None => Rat::zero(),
            Some(_) if support.len() == key.len() => Rat::from_integer(1.into()),
            Some(tau) => {
                let i = key.windows(2).find(|w| w[0] == w[1]).expect("repeated ray")[0];
                let m: Vec<Rat> = self.fan.dual_of(tau, i).iter().map(|x| -x).collect();
                let cone = self.fan.max_cones()[tau].clone();
                let pos = key.iter().position(|&r| r == i).expect("present");
                let mut total = Rat::zero();
                for j in 0..self.fan.num_rays() {
                    if cone.binary_search(&j).is_ok() {
                        continue;
                    }
                    let c = self.fan.pair_ray(&m, j);
                    if c.is_zero() {
                        continue;
                    }
                    let mut next = key.clone();
                    next[pos] = j;
                    next.sort_unstable();
                    total += c * self.monomial_sorted(next);
                }
                total
            }
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// `D_sigma . classes`, i.e. the product of `classes` restricted to the orbit closure `V(sigma)`.
    pub fn restricted(&mut self, sigma: &[usize], classes: &[&ToricClass]) -> Result<Rat> {
        let n = self.fan.dim();
        if sigma.len() + classes.len() != n {
            return Err(Error::WrongArity {
                expected: n - sigma.len().min(n),
                found: classes.len(),
            });
        }
        for c in classes {
            c.check(self.fan)?;
        }
        if !self.fan.is_cone(sigma) || has_repeat(sigma) {
            return Err(Error::FanInvalid(format!(
                "{:?} is not a cone of the fan",
                sigma
            )));
        }
        let mut acc = Rat::zero();
        let mut prefix = sigma.to_vec();
        self.expand(&mut prefix, classes, &Rat::from_integer(1.into()), &mut acc);
        Ok(acc)
    }

    fn expand(
        &mut self,
        prefix: &mut Vec<usize>,
        rest: &[&ToricClass],
        weight: &Rat,
        acc: &mut Rat,
    ) {
        let Some((head, tail)) = rest.split_first() else {
            *acc += weight * self.monomial(prefix);
            return;
        };
        for (j, c) in head.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            prefix.push(j);
            let mut support = prefix.clone();
            support.sort_unstable();
            support.dedup();
            if self.fan.is_cone(&support) {
                self.expand(prefix, tail, &(weight * c), acc);
            }
            prefix.pop();
        }
    }

    pub fn intersect(&mut self, classes: &[&ToricClass]) -> Result<Rat> {
        self.restricted(&[], classes)
    }
}

fn has_repeat(s: &[usize]) -> bool {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

/// Exact intersection number of `dim` classes.
pub fn intersection_number(fan: &Fan, classes: &[ToricClass]) -> Result<Rat> {
    let refs: Vec<&ToricClass> = classes.iter().collect();
    Intersector::new(fan).intersect(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    #[test]
    fn projective_plane() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let h = ToricClass::from_ints(&[1, 0, 0]);
        assert_eq!(
            intersection_number(&f, &[h.clone(), h.clone()]).unwrap(),
            int(1)
        );
        let k = ToricClass::from_ints(&[-1, -1, -1]);
        assert_eq!(intersection_number(&f, &[k.clone(), k]).unwrap(), int(9));
        assert_eq!(
            intersection_number(&f, &[h]),
            Err(Error::WrongArity {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn hirzebruch_negative_section() {
        for a in 0..=3 {
            let f = hirzebruch(a);
            let e = ToricClass::ray(4, 1);
            assert_eq!(intersection_number(&f, &[e.clone(), e]).unwrap(), int(-a));
            let h = ToricClass::ray(4, 3);
            assert_eq!(intersection_number(&f, &[h.clone(), h]).unwrap(), int(a));
            let fib = ToricClass::ray(4, 0);
            assert_eq!(
                intersection_number(&f, &[fib.clone(), fib]).unwrap(),
                int(0)
            );
        }
    }

    #[test]
    fn product_of_lines() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        let h1 = ToricClass::ray(4, 0);
        let h2 = ToricClass::ray(4, 1);
        assert_eq!(
            intersection_number(&f, &[h1.clone(), h1.clone()]).unwrap(),
            int(0)
        );
        assert_eq!(intersection_number(&f, &[h1, h2]).unwrap(), int(1));
    }

    #[test]
    fn restriction_to_orbits() {
        let f = hirzebruch(1);
        let mut eng = Intersector::new(&f);
        let omega = ToricClass::from_ints(&[0, -1, 0, 5]);
        assert_eq!(eng.restricted(&[1], &[&omega]).unwrap(), int(1));
        assert_eq!(eng.restricted(&[0, 1], &[]).unwrap(), int(1));
        assert!(eng.restricted(&[0, 2], &[]).is_err());
        assert!(eng.restricted(&[1, 1], &[]).is_err());
    }

    #[test]
    fn canonical_forms() {
        let f = hirzebruch(2);
        let e = ToricClass::ray(4, 1);
        let alt = ToricClass::from_ints(&[0, 0, -2, 1]);
        assert!(e.linearly_equivalent(&alt, &f).unwrap());
        assert!(!e.linearly_equivalent(&ToricClass::ray(4, 3), &f).unwrap());
        let c = e.canonical(&f).unwrap();
        assert!(c.coeffs()[0].is_zero() && c.coeffs()[1].is_zero());
    }
}
